#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "qsearch/complexity.hpp"
#include "qsearch/entanglement.hpp"
#include "qsearch/pseudopure.hpp"

using namespace qsearch;
using doctest::Approx;

namespace {

// Expected queries at purity eps, minimized over k, from the raw formula.
double best_cost_oracle(int n, double eps) {
  const double big_n = std::ldexp(1.0, n);
  const double theta0 = std::asin(1.0 / std::sqrt(big_n));
  const int limit = static_cast<int>(std::ceil(std::numbers::pi / (4 * theta0))) + 2;
  double best = 1e300;
  for (int k = 0; k <= limit; ++k) {
    const double s = std::sin((2 * k + 1) * theta0);
    best = std::min(best, (k + 1) * big_n / (1.0 + eps * (big_n * s * s - 1.0)));
  }
  return best;
}

}  // namespace

TEST_CASE("classical_queries examples") {
  CHECK(classical_queries(2) == 1.0);
  CHECK(classical_queries(4) == 2.25);
  CHECK(classical_queries(8) == 4.375);
  CHECK_THROWS_AS(classical_queries(1), std::invalid_argument);
}

TEST_CASE("property: classical_queries equals the enumerated systematic search") {
  double previous = 0.0;
  for (std::uint64_t n = 2; n <= 1024; ++n) {
    const std::uint64_t twice_total = oracle::systematic_search_twice_total(n);
    CHECK(twice_total == (n + 2) * (n - 1));
    const double enumerated = static_cast<double>(twice_total) / static_cast<double>(2 * n) ;
    CHECK(std::abs(classical_queries(n) - enumerated) < 1e-12);
    CHECK(classical_queries(n) > previous);
    previous = classical_queries(n);
  }
}

TEST_CASE("pseudo_queries examples") {
  const auto two = make_instance(2, 3);
  const auto opt2 = pseudo_queries(two, 1.0, iteration_search_limit(two));
  CHECK(opt2.k_opt == 1);
  CHECK(opt2.queries == Approx(2.0).epsilon(1e-12));

  const auto five = make_instance(5, 31);
  const double cap = max_separable_epsilon(five, iteration_search_limit(five));
  for (double eps : {0.0, 1e-5, 0.5 * cap, cap}) {
    const auto opt5 = pseudo_queries(five, eps, iteration_search_limit(five));
    CHECK(opt5.k_opt == 0);
    CHECK(opt5.queries == Approx(32.0).epsilon(1e-12));
  }

  const auto three = make_instance(3, 7);
  const auto opt3 = pseudo_queries(three, 0.36603, iteration_search_limit(three));
  CHECK(opt3.k_opt == 1);
  CHECK(opt3.queries == Approx(5.48).epsilon(0.005 / 5.48));
  CHECK(opt3.queries == Approx(2.0 / success_probability(three, 1, 0.36603)).epsilon(1e-14));

  CHECK_THROWS_AS(pseudo_queries(three, -0.1, 3), std::invalid_argument);
}

TEST_CASE("pseudo_queries prefers the smaller k on ties and at zero purity") {
  // N = 4, eps = 1/3: k = 0 and k = 1 both cost 4.
  const auto tie = pseudo_queries(make_instance(2, 0), 1.0 / 3.0, 4);
  CHECK(tie.k_opt == 0);
  CHECK(tie.queries == Approx(4.0).epsilon(1e-14));
  CHECK(2.0 / success_probability(make_instance(2, 0), 1, 1.0 / 3.0) == Approx(4.0).epsilon(1e-14));
  CHECK(pseudo_queries(make_instance(1, 0), 0.7, 5).k_opt == 0);
  CHECK(pseudo_queries(make_instance(6, 0), 0.0, 10).k_opt == 0);
}

TEST_CASE("omitting the final test query only when success is certain") {
  const QueryOptions no_test{false};
  const auto two = make_instance(2, 3);
  const auto opt = pseudo_queries(two, 1.0, iteration_search_limit(two), no_test);
  CHECK(opt.k_opt == 1);
  CHECK(opt.queries == Approx(1.0).epsilon(1e-12));
  CHECK(queries_per_run(0, 1.0, no_test) == 1.0);
  CHECK(queries_per_run(3, 0.9, no_test) == 4.0);
  CHECK(queries_per_run(3, 1.0, QueryOptions{}) == 4.0);

  const auto rows = table1(1, 8, no_test);
  CHECK(rows[1].quantum_queries == Approx(1.0).epsilon(1e-12));
  CHECK(rows[2].quantum_queries == Approx(table1(3, 3)[0].quantum_queries));
}

TEST_CASE("max_separable_epsilon examples") {
  CHECK(max_separable_epsilon(make_instance(2, 3), 1) == Approx(1.0).epsilon(1e-12));
  CHECK(max_separable_epsilon(make_instance(3, 7), 1) ==
        Approx(1.0 / (1.0 + std::sqrt(3.0))).epsilon(1e-12));
  CHECK(max_separable_epsilon(make_instance(4, 15), 2) == Approx(0.20126284519300922).epsilon(1e-12));
  CHECK(max_separable_epsilon(make_instance(7, 0), 0) == 1.0);
}

TEST_CASE("table1 golden rows") {
  constexpr std::array<std::uint64_t, 8> k_opt{0, 1, 1, 2, 0, 0, 0, 0};
  constexpr std::array<double, 8> pseudo{2, 2, 5.48, 12.89, 32, 64, 128, 256};
  constexpr std::array<double, 8> classical{1, 2.25, 4.38, 8.44, 16.47, 32.48, 64.49, 128.50};
  const auto rows = table1(1, 8);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].n == static_cast<int>(i + 1));
    CHECK(rows[i].size == (std::uint64_t{1} << (i + 1)));
    CHECK(rows[i].k_opt == k_opt[i]);
    CHECK(std::abs(rows[i].quantum_queries - pseudo[i]) <= 0.005);
    CHECK(std::abs(rows[i].classical_queries - classical[i]) <= 0.005);
    CHECK(rows[i].quantum_queries >= 1.0);
    const auto inst = make_instance(rows[i].n, 0);
    CHECK(rows[i].epsilon_used <= max_separable_epsilon(inst, rows[i].k_opt) + 1e-15);
  }
  CHECK(rows[1].speedup);
  CHECK(rows[1].quantum_queries < rows[1].classical_queries);
}

TEST_CASE("property: separable machines never beat classical search for n >= 3") {
  for (const auto& row : table1(3, 20)) {
    CAPTURE(row.n);
    CHECK(row.quantum_queries >= row.classical_queries);
    CHECK_FALSE(row.speedup);
  }
}

TEST_CASE("table1 rejects bad ranges") {
  CHECK_THROWS_AS(table1(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(table1(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(table1(1, 31), std::invalid_argument);
}

TEST_CASE("epsilon_speedup examples") {
  const auto two = epsilon_speedup(make_instance(2, 3));
  REQUIRE(two.has_value());
  CHECK(two->k_opt == 1);
  CHECK(std::abs(two->epsilon - 23.0 / 27.0) < 1e-12);

  const auto three = epsilon_speedup(make_instance(3, 7));
  REQUIRE(three.has_value());
  CHECK(three->k_opt == 1);
  // 2 / p(1, eps) = 35/8 with sin^2(3 theta0) = 25/32.
  const double solved = (8.0 * 2.0 / 4.375 - 1.0) / (8.0 * 25.0 / 32.0 - 1.0);
  CHECK(three->epsilon == Approx(solved).epsilon(1e-12));
  CHECK(three->epsilon == Approx(0.5061).epsilon(1e-4));

  CHECK_FALSE(epsilon_speedup(make_instance(1, 0)).has_value());
}

TEST_CASE("property: epsilon_speedup agrees with bisection on the optimized cost") {
  for (int n = 2; n <= 14; ++n) {
    const auto threshold = epsilon_speedup(make_instance(n, 0));
    REQUIRE(threshold.has_value());
    const double classical = classical_queries(std::uint64_t{1} << n);
    const double root = oracle::bisect(
        [&](double eps) { return best_cost_oracle(n, eps) - classical; }, 0.0, 1.0);
    CHECK(std::abs(threshold->epsilon - root) < 1e-9);
  }
}

TEST_CASE("speedup scan examples") {
  const auto three = speedup_scan_record(3);
  CHECK(three.speedup_possible);
  CHECK(three.k_opt == 1);
  REQUIRE(three.iterations.size() == 1);
  CHECK(three.iterations[0].epsilon_bound == Approx(0.3660254037844386).epsilon(1e-12));
  CHECK(three.epsilon_speedup > three.iterations[0].epsilon_bound);
  CHECK(three.entangled_throughout);
  CHECK_FALSE(three.last_step_exception);
  // k = 0 is a product state and is excluded from the comparison.
  CHECK(separability_bound(make_instance(3, 7), 0) >= three.epsilon_speedup);

  const auto records = speedup_entanglement_scan(3, 20);
  REQUIRE(records.size() == 18);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    CAPTURE(r.n);
    CHECK(r.n == static_cast<int>(i) + 3);
    CHECK(r.speedup_possible);
    CHECK(r.entangled_throughout);
    CHECK(r.iterations.size() == r.k_opt);
    // Invariant: entangled_throughout iff every step is entangled, except a
    // final step past the pole.
    bool all = true;
    for (const auto& it : r.iterations) {
      const bool last = it.k == r.k_opt;
      if (!it.entangled && !(last && r.last_step_exception)) all = false;
    }
    CHECK(all == r.entangled_throughout);
  }

  CHECK_THROWS_AS(speedup_entanglement_scan(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(speedup_entanglement_scan(3, 21), std::invalid_argument);
}

TEST_CASE("two-qubit search needs no entanglement") {
  const auto r = speedup_scan_record(2);
  CHECK(r.speedup_possible);
  REQUIRE(r.iterations.size() == 1);
  CHECK_FALSE(r.iterations[0].entangled);
}
