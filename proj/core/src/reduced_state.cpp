#include "qsearch/reduced_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qsearch/search.hpp"

namespace qsearch {

double BlochVector::length() const noexcept { return std::sqrt(x * x + y * y + z * z); }

QubitReducedState QubitReducedState::from_matrix(const Matrix2c& rho) {
  QubitReducedState out;
  out.matrix = rho;
  out.bloch.x = 2.0 * rho[0][1].real();
  out.bloch.y = -2.0 * rho[0][1].imag();
  out.bloch.z = rho[0][0].real() - rho[1][1].real();

  // Eigenvalues of (1 + s.sigma)/2 are (1 +- |s|)/2. Round-off can push |s|
  // just above one; clamp so the smaller eigenvalue never goes negative.
  const double s = std::min(out.bloch.length(), 1.0);
  out.lambda1 = std::clamp(0.5 * (1.0 + s), 0.0, 1.0);
  out.lambda2 = std::clamp(0.5 * (1.0 - s), 0.0, 1.0);
  return out;
}

QubitReducedState partial_trace_single_qubit(std::span<const double> amplitudes,
                                             int qubit) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("amplitude vector length must be a power of two >= 2");
  }
  const int qubits = std::countr_zero(dim);
  if (qubit < 0 || qubit >= qubits) {
    throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(qubits) + " qubits");
  }
  if (std::abs(squared_norm(amplitudes) - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }

  const std::size_t mask = std::size_t{1} << qubit;
  double r00 = 0.0, r11 = 0.0, r01 = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    if (x & mask) continue;
    const double a0 = amplitudes[x];
    const double a1 = amplitudes[x | mask];
    r00 += a0 * a0;
    r11 += a1 * a1;
    r01 += a0 * a1;
  }
  Matrix2c rho{};
  rho[0][0] = r00;
  rho[1][1] = r11;
  rho[0][1] = r01;
  rho[1][0] = r01;
  return QubitReducedState::from_matrix(rho);
}

}  // namespace qsearch
