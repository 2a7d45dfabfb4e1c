#pragma once

#include <array>
#include <complex>
#include <span>

namespace qsearch {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double length() const noexcept;
};

using Matrix2c = std::array<std::array<std::complex<double>, 2>, 2>;

/// Single-qubit density matrix with its Bloch vector and spectrum.
///
/// Eigenvalues are ordered lambda1 >= lambda2, clamped to [0, 1].
struct QubitReducedState {
  Matrix2c matrix{};
  BlochVector bloch{};
  double lambda1 = 1.0;
  double lambda2 = 0.0;

  /// Builds the state from a 2x2 Hermitian trace-one matrix.
  static QubitReducedState from_matrix(const Matrix2c& rho);

  double eigenvalue_product() const noexcept { return lambda1 * lambda2; }
};

/// Reduced density matrix of one qubit of a real n-qubit pure state.
///
/// Throws std::invalid_argument when the length is not a power of two, the
/// state is not normalized, or the qubit index is out of range.
QubitReducedState partial_trace_single_qubit(std::span<const double> amplitudes,
                                             int qubit);

}  // namespace qsearch
