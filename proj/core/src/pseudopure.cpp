#include "qsearch/pseudopure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

constexpr double kTraceTolerance = 1e-10;

void require_purity(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("purity parameter must be in [0, 1], got " +
                                std::to_string(epsilon));
  }
}

void require_observable(const ComplexMatrix& theta, const ComplexVector& psi) {
  if (theta.rows() != theta.cols() || theta.rows() != psi.size() || psi.size() == 0) {
    throw std::invalid_argument("observable and state dimensions disagree");
  }
  if ((theta - theta.adjoint()).cwiseAbs().maxCoeff() > kTraceTolerance) {
    throw std::invalid_argument("observable is not Hermitian");
  }
  if (std::abs(theta.trace()) > kTraceTolerance) {
    throw std::invalid_argument("observable is not traceless");
  }
  if (std::abs(psi.squaredNorm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

}  // namespace

double PseudoPureEnsemble::target_probability() const noexcept {
  const double n_items = static_cast<double>(dimension());
  return (1.0 - epsilon) / n_items + epsilon * pure_part.success_probability();
}

Eigen::MatrixXd PseudoPureEnsemble::density_matrix() const {
  if (dimension() > kMaxDenseDimension) {
    throw std::length_error("dense density matrices are limited to N <= " +
                            std::to_string(kMaxDenseDimension));
  }
  const std::vector<double> amps = pure_part.materialize();
  const Eigen::Map<const Eigen::VectorXd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd rho = epsilon * (psi * psi.transpose());
  rho.diagonal().array() += (1.0 - epsilon) / static_cast<double>(n);
  return rho;
}

PseudoPureEnsemble make_ensemble(const PureSearchState& pure_part, double epsilon) {
  require_purity(epsilon);
  return PseudoPureEnsemble{epsilon, pure_part};
}

double success_probability(const SearchInstance& instance, std::uint64_t k,
                           double epsilon) {
  require_purity(epsilon);
  const double n_items = static_cast<double>(instance.size());
  const double s = std::sin(instance.angle(k));
  return (1.0 + epsilon * (n_items * s * s - 1.0)) / n_items;
}

FluctuationReport fluctuation_report(const ComplexMatrix& theta, const ComplexVector& psi,
                                     double epsilon) {
  require_purity(epsilon);
  require_observable(theta, psi);

  const ComplexVector theta_psi = theta * psi;
  const double mean = psi.dot(theta_psi).real();
  const double second_moment = theta_psi.squaredNorm();

  FluctuationReport report;
  report.epsilon = epsilon;
  report.pure_expectation = mean;
  report.pure_variance = std::max(second_moment - mean * mean, 0.0);
  // tr(theta^2) is the squared Frobenius norm for Hermitian theta.
  report.trace_theta_sq_over_n = theta.squaredNorm() / static_cast<double>(psi.size());
  report.pseudo_variance =
      epsilon * report.pure_variance +
      (1.0 - epsilon) * (report.trace_theta_sq_over_n + epsilon * mean * mean);
  return report;
}

double pseudo_variance(const ComplexMatrix& theta, const ComplexVector& psi, double epsilon) {
  return fluctuation_report(theta, psi, epsilon).pseudo_variance;
}

double traceless_expectation_scaling(const ComplexMatrix& theta, const ComplexVector& psi,
                                     double epsilon) {
  require_purity(epsilon);
  require_observable(theta, psi);
  return epsilon * psi.dot(theta * psi).real();
}

double projector_deviation_variance(std::uint64_t dimension, double epsilon) {
  if (dimension < 2) throw std::invalid_argument("dimension must be at least 2");
  require_purity(epsilon);
  const double inv_n = 1.0 / static_cast<double>(dimension);
  return (1.0 - epsilon) * (1.0 - inv_n) * (inv_n + epsilon * (1.0 - inv_n));
}

ComplexMatrix projector_deviation_operator(const ComplexVector& psi) {
  const auto n = psi.size();
  ComplexMatrix theta = psi * psi.adjoint();
  theta.diagonal().array() -= 1.0 / static_cast<double>(n);
  return theta;
}

ComplexMatrix pseudo_pure_density(const ComplexVector& psi, double epsilon) {
  require_purity(epsilon);
  if (std::abs(psi.squaredNorm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
  const auto n = psi.size();
  ComplexMatrix rho = epsilon * (psi * psi.adjoint());
  rho.diagonal().array() += (1.0 - epsilon) / static_cast<double>(n);
  return rho;
}

double direct_variance(const ComplexMatrix& rho, const ComplexMatrix& theta) {
  const double mean = (rho * theta).trace().real();
  return (rho * theta * theta).trace().real() - mean * mean;
}

}  // namespace qsearch
