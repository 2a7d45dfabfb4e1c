#include "qsearch/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsearch/entanglement.hpp"
#include "qsearch/pseudopure.hpp"

namespace qsearch {

namespace {

// Success probabilities this close to one count as certain.
constexpr double kCertainty = 1e-12;
// N sin^2(theta_k) - 1 at or below this is treated as zero gain.
constexpr double kGainFloor = 1e-12;
constexpr int kMaxScanQubits = 20;

void require_qubit_range(int n_min, int n_max, int lo, int hi) {
  if (n_min < lo || n_max > hi || n_min > n_max) {
    throw std::invalid_argument("qubit range must satisfy " + std::to_string(lo) +
                                " <= n_min <= n_max <= " + std::to_string(hi) + ", got [" +
                                std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
  }
}

}  // namespace

double classical_queries(std::uint64_t size) {
  if (size < 2) throw std::invalid_argument("search space must hold at least 2 items");
  const double n_items = static_cast<double>(size);
  return (n_items + 2.0) * (n_items - 1.0) / (2.0 * n_items);
}

double queries_per_run(std::uint64_t k, double probability, const QueryOptions& options) {
  const double iterations = static_cast<double>(k);
  if (!options.include_final_test_query && k > 0 && probability >= 1.0 - kCertainty) {
    return iterations;
  }
  return iterations + 1.0;
}

std::uint64_t iteration_search_limit(const SearchInstance& instance) {
  return instance.rotation_steps() + 2;
}

QueryOptimum pseudo_queries(const SearchInstance& instance, double epsilon,
                            std::uint64_t k_max, const QueryOptions& options) {
  QueryOptimum best{0, 0.0};
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const double p = success_probability(instance, k, epsilon);
    const double cost = queries_per_run(k, p, options) / p;
    if (k == 0 || cost < best.queries) best = {k, cost};
  }
  return best;
}

double max_separable_epsilon(const SearchInstance& instance, std::uint64_t k) {
  double running = 1.0;
  for (std::uint64_t j = 0; j <= k; ++j) {
    running = std::min(running, separability_bound(instance, j));
  }
  return running;
}

ComplexityRow separable_complexity_row(int n, const QueryOptions& options) {
  const SearchInstance instance = make_instance(n, (std::uint64_t{1} << n) - 1);
  const std::uint64_t limit = iteration_search_limit(instance);

  ComplexityRow row;
  row.n = n;
  row.size = instance.size();
  row.classical_queries = classical_queries(instance.size());

  // The cap on epsilon tightens as k grows, so each k is scored with the
  // running minimum of the bounds up to that k.
  double cap = 1.0;
  for (std::uint64_t k = 0; k <= limit; ++k) {
    cap = std::min(cap, separability_bound(instance, k));
    const double p = success_probability(instance, k, cap);
    const double cost = queries_per_run(k, p, options) / p;
    if (k == 0 || cost < row.quantum_queries) {
      row.k_opt = k;
      row.quantum_queries = cost;
      row.epsilon_used = cap;
    }
  }
  row.speedup = row.quantum_queries < row.classical_queries;
  return row;
}

std::vector<ComplexityRow> table1(int n_min, int n_max, const QueryOptions& options) {
  require_qubit_range(n_min, n_max, 1, kMaxInstanceQubits);
  std::vector<ComplexityRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) rows.push_back(separable_complexity_row(n, options));
  return rows;
}

std::optional<SpeedupThreshold> epsilon_speedup(const SearchInstance& instance) {
  const double n_items = static_cast<double>(instance.size());
  const double classical = classical_queries(instance.size());
  const std::uint64_t limit = iteration_search_limit(instance);

  // (k+1)/p(k, eps) < classical  <=>  eps > (N (k+1)/classical - 1) / (N sin^2 theta_k - 1)
  // whenever the denominator is positive; otherwise p <= 1/N and no eps helps.
  std::optional<SpeedupThreshold> best;
  for (std::uint64_t k = 0; k <= limit; ++k) {
    const double s = std::sin(instance.angle(k));
    const double gain = n_items * s * s - 1.0;
    if (gain <= kGainFloor) continue;
    const double needed = n_items * static_cast<double>(k + 1) / classical - 1.0;
    const double threshold = std::max(needed / gain, 0.0);
    if (!best || threshold < best->epsilon) best = SpeedupThreshold{k, threshold};
  }
  if (best && best->epsilon > 1.0) return std::nullopt;
  return best;
}

SpeedupScanRecord speedup_scan_record(int n) {
  const SearchInstance instance = make_instance(n, (std::uint64_t{1} << n) - 1);
  SpeedupScanRecord record;
  record.n = n;

  const auto threshold = epsilon_speedup(instance);
  if (!threshold) return record;

  record.speedup_possible = true;
  record.k_opt = threshold->k_opt;
  record.epsilon_speedup = threshold->epsilon;

  bool all_before_last = true;
  for (std::uint64_t k = 1; k <= record.k_opt; ++k) {
    const double bound = separability_bound(instance, k);
    const bool entangled = is_entangled(record.epsilon_speedup, bound);
    record.iterations.push_back({k, bound, entangled});
    if (k < record.k_opt && !entangled) all_before_last = false;
  }

  const bool past_pole = instance.angle(record.k_opt) > std::numbers::pi / 2.0;
  const bool last_entangled = record.iterations.empty() || record.iterations.back().entangled;
  record.last_step_exception = past_pole && !last_entangled;
  record.entangled_throughout =
      all_before_last && (last_entangled || record.last_step_exception);
  return record;
}

std::vector<SpeedupScanRecord> speedup_entanglement_scan(int n_min, int n_max) {
  require_qubit_range(n_min, n_max, 3, kMaxScanQubits);
  std::vector<SpeedupScanRecord> records;
  for (int n = n_min; n <= n_max; ++n) records.push_back(speedup_scan_record(n));
  return records;
}

}  // namespace qsearch
