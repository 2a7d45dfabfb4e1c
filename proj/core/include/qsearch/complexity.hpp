#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsearch/search.hpp"

namespace qsearch {

/// Expected oracle calls for systematic classical search over N items when
/// the last location is inferred rather than tested: (N+2)(N-1)/(2N).
double classical_queries(std::uint64_t size);

struct QueryOptions {
  /// Charge one extra oracle call per run to test the measured answer. When
  /// false, the test is dropped only for runs that succeed with certainty.
  bool include_final_test_query = true;
};

/// Oracle calls charged to one run of k iterations with success probability p.
double queries_per_run(std::uint64_t k, double probability, const QueryOptions& options);

/// Upper end of the iteration range searched when minimizing expected
/// queries: ceil(pi / (4 theta0)) + 2.
std::uint64_t iteration_search_limit(const SearchInstance& instance);

struct QueryOptimum {
  std::uint64_t k_opt = 0;
  double queries = 0.0;
};

/// min over k in [0, k_max] of (k+1)/p(k, eps); ties go to the smaller k.
QueryOptimum pseudo_queries(const SearchInstance& instance, double epsilon,
                            std::uint64_t k_max, const QueryOptions& options = {});

/// min_{j <= k} of the per-iteration separability bounds.
double max_separable_epsilon(const SearchInstance& instance, std::uint64_t k);

struct ComplexityRow {
  int n = 0;
  std::uint64_t size = 0;
  std::uint64_t k_opt = 0;
  double quantum_queries = 0.0;
  double classical_queries = 0.0;
  double epsilon_used = 0.0;
  bool speedup = false;
};

/// Best expected query count for an n-qubit machine that stays separable at
/// every step up to the chosen iteration count.
ComplexityRow separable_complexity_row(int n, const QueryOptions& options = {});

std::vector<ComplexityRow> table1(int n_min, int n_max, const QueryOptions& options = {});

struct SpeedupThreshold {
  std::uint64_t k_opt = 0;
  double epsilon = 0.0;
};

/// Smallest purity for which the optimized pseudo-pure search beats
/// classical_queries(N), with the iteration count that attains it. Empty when
/// no purity in [0, 1] gives a speed-up.
std::optional<SpeedupThreshold> epsilon_speedup(const SearchInstance& instance);

struct IterationComparison {
  std::uint64_t k = 0;
  double epsilon_bound = 1.0;
  bool entangled = false;
};

struct SpeedupScanRecord {
  int n = 0;
  std::uint64_t k_opt = 0;
  double epsilon_speedup = 0.0;
  bool speedup_possible = false;
  /// One entry per 0 < k <= k_opt.
  std::vector<IterationComparison> iterations;
  bool entangled_throughout = false;
  bool last_step_exception = false;
};

/// Compares the speed-up purity threshold against the separability bound at
/// each iteration up to the threshold's k_opt. Accepts any n in [2, 30].
SpeedupScanRecord speedup_scan_record(int n);

/// Requires 2 < n_min <= n_max <= 20. Rows are ordered by n.
std::vector<SpeedupScanRecord> speedup_entanglement_scan(int n_min, int n_max);

}  // namespace qsearch
