#include "qsearch/search.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

void require_normalized(std::span<const double> amplitudes) {
  const double norm = squared_norm(amplitudes);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized (squared norm " +
                                std::to_string(norm) + ")");
  }
}

// Neumaier summation; keeps long Grover runs normalized to ~1e-15.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace

SearchInstance::SearchInstance(int qubits, std::uint64_t target)
    : qubits_(qubits), size_(0), target_(target), base_angle_(0.0) {
  if (qubits < 1 || qubits > kMaxInstanceQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxInstanceQubits) + "], got " +
                                std::to_string(qubits));
  }
  size_ = std::uint64_t{1} << qubits;
  if (target >= size_) {
    throw std::invalid_argument("target " + std::to_string(target) +
                                " out of range for N = " + std::to_string(size_));
  }
  base_angle_ = std::asin(1.0 / std::sqrt(static_cast<double>(size_)));
}

double SearchInstance::angle(std::uint64_t k) const noexcept {
  return static_cast<double>(2 * k + 1) * base_angle_;
}

std::uint64_t SearchInstance::rotation_steps() const noexcept {
  return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / (4.0 * base_angle_)));
}

SearchInstance make_instance(int qubits, std::uint64_t target) {
  return SearchInstance(qubits, target);
}

std::vector<double> PureSearchState::materialize() const {
  if (amplitudes) return *amplitudes;
  std::vector<double> out(instance.size(), off_target_amp);
  out[instance.target()] = target_amp;
  return out;
}

PureSearchState closed_form_state(const SearchInstance& instance,
                                  std::uint64_t iterations, bool materialize) {
  PureSearchState state{instance, iterations, 0.0, 0.0, 0.0, std::nullopt};
  state.theta = instance.angle(iterations);
  const double others = static_cast<double>(instance.size() - 1);
  state.off_target_amp = std::cos(state.theta) / std::sqrt(others);
  state.target_amp = std::sin(state.theta);
  if (materialize) {
    if (instance.qubits() > kMaxSimulatedQubits) {
      throw std::length_error("refusing to materialize more than 2^" +
                              std::to_string(kMaxSimulatedQubits) + " amplitudes");
    }
    state.amplitudes = state.materialize();
  }
  return state;
}

std::vector<double> apply_grover_step(std::span<const double> amplitudes,
                                      const SearchInstance& instance) {
  if (amplitudes.size() != instance.size()) {
    throw std::invalid_argument("amplitude vector length does not match N");
  }
  require_normalized(amplitudes);

  std::vector<double> out(amplitudes.begin(), amplitudes.end());
  out[instance.target()] = -out[instance.target()];

  // -(1 - 2|u><u|) v = 2 <u|v> u - v, with <u|v> u = mean(v) on every entry.
  const double sum = compensated_sum(out);
  const double twice_mean = 2.0 * sum / static_cast<double>(out.size());
  for (double& a : out) a = twice_mean - a;
  return out;
}

std::vector<double> uniform_state(const SearchInstance& instance) {
  return std::vector<double>(instance.size(),
                             1.0 / std::sqrt(static_cast<double>(instance.size())));
}

std::vector<double> simulate_statevector(const SearchInstance& instance,
                                         std::uint64_t iterations) {
  if (instance.qubits() > kMaxSimulatedQubits) {
    throw std::length_error("statevector simulation limited to " +
                            std::to_string(kMaxSimulatedQubits) + " qubits");
  }
  std::vector<double> state = uniform_state(instance);
  for (std::uint64_t k = 0; k < iterations; ++k) {
    state = apply_grover_step(state, instance);
  }
  return state;
}

double squared_norm(std::span<const double> amplitudes) noexcept {
  double acc = 0.0;
  for (double a : amplitudes) acc += a * a;
  return acc;
}

double squared_overlap(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("overlap of vectors with different lengths");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot * dot;
}

}  // namespace qsearch
