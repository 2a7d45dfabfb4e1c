#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsearch/reduced_state.hpp"
#include "qsearch/search.hpp"

namespace qsearch {

/// Analytic Bloch vector of any single qubit of the k-th Grover state, in
/// the frame where that qubit's target bit is 1.
BlochVector bloch_vector(const SearchInstance& instance, std::uint64_t k);

/// Same as bloch_vector but expressed in the computational basis of the given
/// qubit: when the target bit there is 0 the basis is swapped, flipping s_z.
BlochVector bloch_vector_for_qubit(const SearchInstance& instance, std::uint64_t k,
                                   int qubit);

// Entropies of a qubit with Bloch length s. All reject s outside [0, 1]
// beyond a 1e-12 slack and clamp values inside the slack.

/// Base-2 von Neumann entropy, in [0, 1].
double von_neumann_entropy(double s);
/// tr(rho - rho^2) = (1 - s^2) / 2.
double linear_entropy(double s);
/// Hilbert-Schmidt distance to the maximally mixed state, s / sqrt(2).
double hs_distance(double s);

/// lambda1 * lambda2 of the single-qubit reduced state at step k.
double schmidt_product(const SearchInstance& instance, std::uint64_t k);

/// Largest purity parameter for which the pseudo-pure state at step k is not
/// shown entangled: 1 / (1 + N sqrt(lambda1 lambda2)).
double separability_bound(const SearchInstance& instance, std::uint64_t k);

/// Margin by which epsilon must exceed a bound to count as entangled; bounds
/// that are exactly 1 analytically can evaluate a few ulps below it.
inline constexpr double kEntanglementMargin = 1e-12;

/// True when a pseudo-pure state with this purity is provably entangled.
inline bool is_entangled(double epsilon, double bound) noexcept {
  return epsilon > bound + kEntanglementMargin;
}

struct IterationBound {
  std::uint64_t k = 0;
  double epsilon = 1.0;
};

struct SeparabilityProfile {
  std::vector<IterationBound> per_iteration;
  std::vector<IterationBound> cumulative_min;
};

SeparabilityProfile separability_profile(const SearchInstance& instance,
                                         std::uint64_t k_max);

/// Fidelity with the singlet of the pseudo-pure state built on `amplitudes`,
/// projected onto the four-dimensional span of its one-qubit Schmidt basis.
///
/// The pseudo-pure state is separable on that subspace iff the fidelity is at
/// most 1/2. The Schmidt basis is computed numerically from the amplitudes,
/// so this serves as an independent check of separability_bound.
double projected_singlet_fidelity(std::span<const double> amplitudes, int qubit,
                                  double epsilon);

}  // namespace qsearch
