#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qsearch/search.hpp"

namespace qsearch {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Purity above which the pseudo-pure description of a thermal NMR ensemble
/// stops being a good approximation.
inline constexpr double kDefaultValidityThreshold = 0.1;

/// Largest dimension for which dense density matrices are materialized.
inline constexpr std::uint64_t kMaxDenseDimension = 256;

/// rho = (1 - eps)/N * 1 + eps |Psi_k><Psi_k|, held implicitly.
struct PseudoPureEnsemble {
  double epsilon = 0.0;
  PureSearchState pure_part;

  std::uint64_t dimension() const noexcept { return pure_part.instance.size(); }

  bool exceeds_validity(double threshold = kDefaultValidityThreshold) const noexcept {
    return epsilon > threshold;
  }

  /// <y|rho|y>.
  double target_probability() const noexcept;

  /// Dense N x N matrix; throws std::length_error above kMaxDenseDimension.
  Eigen::MatrixXd density_matrix() const;
};

/// Throws std::invalid_argument unless epsilon is in [0, 1].
PseudoPureEnsemble make_ensemble(const PureSearchState& pure_part, double epsilon);

/// p(k) = [1 + eps (N sin^2 theta_k - 1)] / N.
double success_probability(const SearchInstance& instance, std::uint64_t k,
                           double epsilon);

struct FluctuationReport {
  double epsilon = 0.0;
  double pure_expectation = 0.0;
  double pure_variance = 0.0;
  double trace_theta_sq_over_n = 0.0;
  double pseudo_variance = 0.0;
};

/// Fluctuations of a traceless Hermitian observable on the pure state and on
/// the pseudo-pure mixture built from it.
///
/// Throws std::invalid_argument if theta is not square, not Hermitian, not
/// traceless (1e-10), if psi is not normalized, or if epsilon is outside [0, 1].
FluctuationReport fluctuation_report(const ComplexMatrix& theta, const ComplexVector& psi,
                                     double epsilon);

double pseudo_variance(const ComplexMatrix& theta, const ComplexVector& psi, double epsilon);

/// tr(rho theta) = eps <psi|theta|psi> for traceless theta.
double traceless_expectation_scaling(const ComplexMatrix& theta, const ComplexVector& psi,
                                     double epsilon);

/// Variance of theta = |psi><psi| - 1/N on the pseudo-pure state:
/// (1 - eps)(1 - 1/N)[1/N + eps (1 - 1/N)].
double projector_deviation_variance(std::uint64_t dimension, double epsilon);

/// |psi><psi| - 1/N.
ComplexMatrix projector_deviation_operator(const ComplexVector& psi);

/// Dense pseudo-pure density matrix built from a normalized pure state.
ComplexMatrix pseudo_pure_density(const ComplexVector& psi, double epsilon);

/// tr(rho theta^2) - tr(rho theta)^2 by dense matrix products.
double direct_variance(const ComplexMatrix& rho, const ComplexMatrix& theta);

}  // namespace qsearch
