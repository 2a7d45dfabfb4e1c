#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qsearch {

/// Largest register accepted by make_instance.
inline constexpr int kMaxInstanceQubits = 30;
/// Largest register the dense statevector simulator will allocate.
inline constexpr int kMaxSimulatedQubits = 24;

/// Tolerance applied when checking that an input state is normalized.
inline constexpr double kNormTolerance = 1e-10;

/// A single-target search problem over N = 2^n items.
///
/// Qubit l of a basis state is bit l of its integer label (qubit 0 is the
/// least-significant bit).
class SearchInstance {
 public:
  SearchInstance(int qubits, std::uint64_t target);

  int qubits() const noexcept { return qubits_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t target() const noexcept { return target_; }

  /// theta0 with sin(theta0) = 1/sqrt(N).
  double base_angle() const noexcept { return base_angle_; }

  /// Rotation angle after k iterations: (2k+1) * theta0.
  double angle(std::uint64_t k) const noexcept;

  /// Bit value of the target at the given qubit.
  int target_bit(int qubit) const noexcept {
    return static_cast<int>((target_ >> qubit) & 1U);
  }

  /// ceil(pi / (4 theta0)), the iteration count at which theta_k first
  /// reaches or passes pi/2 (up to one step).
  std::uint64_t rotation_steps() const noexcept;

 private:
  int qubits_;
  std::uint64_t size_;
  std::uint64_t target_;
  double base_angle_;
};

/// Builds a validated instance; throws std::invalid_argument on bad input.
SearchInstance make_instance(int qubits, std::uint64_t target);

/// Grover state after k iterations, described by its two distinct amplitudes.
struct PureSearchState {
  SearchInstance instance;
  std::uint64_t iterations = 0;
  double theta = 0.0;
  double off_target_amp = 0.0;
  double target_amp = 0.0;
  std::optional<std::vector<double>> amplitudes;

  double success_probability() const noexcept { return target_amp * target_amp; }

  /// Dense amplitude vector (uses the cached copy when present).
  std::vector<double> materialize() const;
};

PureSearchState closed_form_state(const SearchInstance& instance,
                                  std::uint64_t iterations,
                                  bool materialize = false);

/// One application of G = -I_0 I_y: flip the target sign, reflect about the
/// uniform superposition, negate.
std::vector<double> apply_grover_step(std::span<const double> amplitudes,
                                      const SearchInstance& instance);

/// Uniform superposition over all N basis states.
std::vector<double> uniform_state(const SearchInstance& instance);

/// Brute-force evolution of the uniform state by repeated apply_grover_step.
std::vector<double> simulate_statevector(const SearchInstance& instance,
                                         std::uint64_t iterations);

double squared_norm(std::span<const double> amplitudes) noexcept;

/// |<a|b>|^2 for real vectors of equal length.
double squared_overlap(std::span<const double> a, std::span<const double> b);

}  // namespace qsearch
