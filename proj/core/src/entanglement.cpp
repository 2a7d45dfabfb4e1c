#include "qsearch/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

constexpr double kBlochSlack = 1e-12;

double checked_length(double s) {
  if (!(s >= -kBlochSlack && s <= 1.0 + kBlochSlack)) {
    throw std::invalid_argument("Bloch length must be in [0, 1], got " + std::to_string(s));
  }
  return std::clamp(s, 0.0, 1.0);
}

// -p log2 p with the 0 log 0 = 0 limit.
double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Full-space index for rest-register index r with the given bit at `qubit`.
std::size_t insert_bit(std::size_t rest, int qubit, std::size_t bit) {
  const std::size_t low_mask = (std::size_t{1} << qubit) - 1;
  return ((rest & ~low_mask) << 1) | (bit << qubit) | (rest & low_mask);
}

double norm_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double a : v) acc += a * a;
  return std::sqrt(acc);
}

// Unit vector orthogonal to `unit`, by Gram-Schmidt on the basis vector where
// `unit` is smallest.
std::vector<double> orthogonal_complement(const std::vector<double>& unit) {
  const auto pos = std::min_element(unit.begin(), unit.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  const auto idx = static_cast<std::size_t>(pos - unit.begin());
  std::vector<double> out(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) out[i] = -unit[idx] * unit[i];
  out[idx] += 1.0;
  const double n = norm_of(out);
  for (double& a : out) a /= n;
  return out;
}

}  // namespace

BlochVector bloch_vector(const SearchInstance& instance, std::uint64_t k) {
  const double n_items = static_cast<double>(instance.size());
  const double theta = instance.angle(k);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  BlochVector out;
  out.x = (n_items - 2.0) / (n_items - 1.0) * c2 +
          std::sin(2.0 * theta) / std::sqrt(n_items - 1.0);
  out.y = 0.0;
  out.z = c2 / (n_items - 1.0) - s2;
  return out;
}

BlochVector bloch_vector_for_qubit(const SearchInstance& instance, std::uint64_t k,
                                   int qubit) {
  if (qubit < 0 || qubit >= instance.qubits()) {
    throw std::invalid_argument("qubit index out of range");
  }
  BlochVector out = bloch_vector(instance, k);
  if (instance.target_bit(qubit) == 0) out.z = -out.z;
  return out;
}

double von_neumann_entropy(double s) {
  s = checked_length(s);
  return entropy_term(0.5 * (1.0 - s)) + entropy_term(0.5 * (1.0 + s));
}

double linear_entropy(double s) {
  s = checked_length(s);
  return 0.5 * (1.0 - s * s);
}

double hs_distance(double s) {
  s = checked_length(s);
  return s / std::sqrt(2.0);
}

double schmidt_product(const SearchInstance& instance, std::uint64_t k) {
  const double n_items = static_cast<double>(instance.size());
  const double sin_term = std::sin(2.0 * static_cast<double>(k) * instance.base_angle());
  const double cos_term = std::cos(instance.angle(k));
  const double prefactor = n_items * (n_items - 2.0) / (2.0 * (n_items - 1.0) * (n_items - 1.0));
  return prefactor * sin_term * sin_term * cos_term * cos_term;
}

double separability_bound(const SearchInstance& instance, std::uint64_t k) {
  const double product = std::max(schmidt_product(instance, k), 0.0);
  return 1.0 / (1.0 + static_cast<double>(instance.size()) * std::sqrt(product));
}

SeparabilityProfile separability_profile(const SearchInstance& instance,
                                         std::uint64_t k_max) {
  SeparabilityProfile profile;
  profile.per_iteration.reserve(k_max + 1);
  profile.cumulative_min.reserve(k_max + 1);
  double running = 1.0;
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double eps = separability_bound(instance, k);
    running = std::min(running, eps);
    profile.per_iteration.push_back({k, eps});
    profile.cumulative_min.push_back({k, running});
  }
  return profile;
}

double projected_singlet_fidelity(std::span<const double> amplitudes, int qubit,
                                  double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("purity parameter must be in [0, 1]");
  }
  const QubitReducedState reduced = partial_trace_single_qubit(amplitudes, qubit);
  const std::size_t dim = amplitudes.size();
  const std::size_t rest_dim = dim / 2;

  // Qubit eigenbasis: e carries lambda1, g carries lambda2.
  const double a = reduced.matrix[0][0].real();
  const double d = reduced.matrix[1][1].real();
  const double b = reduced.matrix[0][1].real();
  const double phi = 0.5 * std::atan2(2.0 * b, a - d);
  const std::array<double, 2> e{std::cos(phi), std::sin(phi)};
  const std::array<double, 2> g{-std::sin(phi), std::cos(phi)};

  // Rest-register partners from contracting the state with <e| and <g|.
  std::vector<double> g_rest(rest_dim), e_rest(rest_dim);
  for (std::size_t r = 0; r < rest_dim; ++r) {
    const double psi0 = amplitudes[insert_bit(r, qubit, 0)];
    const double psi1 = amplitudes[insert_bit(r, qubit, 1)];
    g_rest[r] = e[0] * psi0 + e[1] * psi1;
    e_rest[r] = -(g[0] * psi0 + g[1] * psi1);
  }
  const double g_norm = norm_of(g_rest);
  for (double& v : g_rest) v /= g_norm;
  const double e_norm = norm_of(e_rest);
  if (e_norm < 1e-9) {
    e_rest = orthogonal_complement(g_rest);
  } else {
    for (double& v : e_rest) v /= e_norm;
  }

  // Orthonormal subspace basis {g'g, g'e, e'g, e'e} embedded in the full space.
  const std::array<const std::vector<double>*, 2> rest_vecs{&g_rest, &e_rest};
  const std::array<const std::array<double, 2>*, 2> qubit_vecs{&g, &e};
  std::array<std::vector<double>, 4> basis;
  for (int i = 0; i < 4; ++i) {
    const auto& rv = *rest_vecs[i / 2];
    const auto& qv = *qubit_vecs[i % 2];
    basis[i].assign(dim, 0.0);
    for (std::size_t r = 0; r < rest_dim; ++r) {
      basis[i][insert_bit(r, qubit, 0)] = rv[r] * qv[0];
      basis[i][insert_bit(r, qubit, 1)] = rv[r] * qv[1];
    }
  }

  std::array<double, 4> overlaps{};
  for (int i = 0; i < 4; ++i) {
    double dot = 0.0;
    for (std::size_t x = 0; x < dim; ++x) dot += basis[i][x] * amplitudes[x];
    overlaps[i] = dot;
  }

  const double mixed = (1.0 - epsilon) / static_cast<double>(dim);
  std::array<std::array<double, 4>, 4> rho4{};
  double trace = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      rho4[i][j] = epsilon * overlaps[i] * overlaps[j] + (i == j ? mixed : 0.0);
    }
    trace += rho4[i][i];
  }

  // |Psi-> = (|g'e> - |e'g>) / sqrt(2) in the subspace basis.
  const std::array<double, 4> singlet{0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
  double fidelity = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) fidelity += singlet[i] * rho4[i][j] * singlet[j];
  }
  return fidelity / trace;
}

}  // namespace qsearch
