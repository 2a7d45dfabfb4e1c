#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qsearch/pseudopure.hpp"

using namespace qsearch;
using doctest::Approx;

namespace {

ComplexVector as_complex(const std::vector<double>& v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

TEST_CASE("success_probability examples") {
  for (int n = 1; n <= 6; ++n) {
    const auto inst = make_instance(n, 0);
    for (std::uint64_t k = 0; k < 4; ++k) {
      CHECK(success_probability(inst, k, 0.0) == Approx(1.0 / static_cast<double>(inst.size())));
      CHECK(success_probability(inst, k, 1.0) ==
            Approx(closed_form_state(inst, k).success_probability()).epsilon(1e-14));
    }
  }
  // sin^2(3 theta0) = 25/32 at N = 8.
  const double eps = 0.36603;
  const double expected = (1.0 + eps * (8.0 * 25.0 / 32.0 - 1.0)) / 8.0;
  CHECK(expected == Approx(0.36521).epsilon(1e-4));
  CHECK(success_probability(make_instance(3, 2), 1, eps) == Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(success_probability(make_instance(3, 2), 1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(success_probability(make_instance(3, 2), 1, 1.1), std::invalid_argument);
}

TEST_CASE("success_probability is the target diagonal of the density matrix") {
  for (int n = 1; n <= 6; ++n) {
    const auto inst = make_instance(n, (std::uint64_t{1} << n) - 1);
    for (std::uint64_t k = 0; k <= inst.rotation_steps(); ++k) {
      for (double eps : {0.0, 1e-5, 0.1, 0.37, 1.0}) {
        const auto ens = make_ensemble(closed_form_state(inst, k), eps);
        const auto rho = ens.density_matrix();
        const auto y = static_cast<Eigen::Index>(inst.target());
        CHECK(std::abs(success_probability(inst, k, eps) - rho(y, y)) < 1e-12);
        CHECK(std::abs(ens.target_probability() - rho(y, y)) < 1e-12);
      }
    }
  }
}

TEST_CASE("property: p(k) in [1/N, 1] and increasing in epsilon when useful") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 1; n <= 10; ++n) {
    const auto inst = make_instance(n, 0);
    const double floor = 1.0 / static_cast<double>(inst.size());
    for (std::uint64_t k = 0; k <= 2 * inst.rotation_steps(); ++k) {
      const double a = unit(rng), b = unit(rng);
      const double pa = success_probability(inst, k, std::min(a, b));
      const double pb = success_probability(inst, k, std::max(a, b));
      const double pure = closed_form_state(inst, k).success_probability();
      if (pure > floor + 1e-12) {
        CHECK(pa >= floor - 1e-15);
        CHECK(pb <= 1.0 + 1e-15);
        if (std::abs(a - b) > 1e-9) CHECK(pb > pa);
      }
    }
  }
}

TEST_CASE("density matrix spectrum") {
  for (int n = 1; n <= 5; ++n) {
    const auto inst = make_instance(n, 1);
    for (double eps : {0.0, 0.25, 0.9}) {
      const auto ens = make_ensemble(closed_form_state(inst, 1), eps);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ens.density_matrix());
      const auto& ev = solver.eigenvalues();
      const double low = (1.0 - eps) / static_cast<double>(inst.size());
      for (Eigen::Index i = 0; i + 1 < ev.size(); ++i) CHECK(ev(i) == Approx(low).epsilon(1e-12));
      CHECK(ev(ev.size() - 1) == Approx(low + eps).epsilon(1e-12));
      CHECK(ens.density_matrix().trace() == Approx(1.0));
    }
  }
  CHECK_THROWS_AS(make_ensemble(closed_form_state(make_instance(9, 0), 0), 0.5).density_matrix(),
                  std::length_error);
}

TEST_CASE("validity flag") {
  const auto state = closed_form_state(make_instance(3, 0), 1);
  CHECK_FALSE(make_ensemble(state, 1e-5).exceeds_validity());
  CHECK(make_ensemble(state, 0.5).exceeds_validity());
  CHECK_FALSE(make_ensemble(state, 0.5).exceeds_validity(0.6));
  CHECK_THROWS_AS(make_ensemble(state, 2.0), std::invalid_argument);
}

TEST_CASE("pseudo_variance examples") {
  std::mt19937_64 rng(99);
  const auto theta = oracle::random_traceless_hermitian(4, rng);
  const auto psi = oracle::random_state(4, rng);
  const auto report = fluctuation_report(theta, psi, 1.0);
  CHECK(report.pseudo_variance == Approx(report.pure_variance).epsilon(1e-14));
  const auto mixed = fluctuation_report(theta, psi, 0.0);
  CHECK(mixed.pseudo_variance == Approx(mixed.trace_theta_sq_over_n).epsilon(1e-14));

  const auto uniform = as_complex(uniform_state(make_instance(2, 0)));
  const auto deviation = projector_deviation_operator(uniform);
  const double oracle_value = oracle::variance_by_trace(deviation, uniform, 0.5);
  CHECK(oracle_value == Approx(0.234375).epsilon(1e-14));
  CHECK(std::abs(pseudo_variance(deviation, uniform, 0.5) - oracle_value) < 1e-12);
}

TEST_CASE("pseudo_variance rejects bad input") {
  std::mt19937_64 rng(3);
  auto theta = oracle::random_traceless_hermitian(4, rng);
  const auto psi = oracle::random_state(4, rng);
  ComplexMatrix shifted = theta;
  shifted.diagonal().array() += 0.1;
  CHECK_THROWS_AS(pseudo_variance(shifted, psi, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(pseudo_variance(theta, ComplexVector(2 * psi), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(pseudo_variance(theta, psi, -0.5), std::invalid_argument);
  ComplexMatrix skew = theta;
  skew(0, 1) += std::complex<double>(0.0, 1.0);
  CHECK_THROWS_AS(pseudo_variance(skew, psi, 0.5), std::invalid_argument);
}

TEST_CASE("property: fluctuation identity against the direct trace") {
  std::mt19937_64 rng(0x5EEDF00D);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    for (Eigen::Index n : {2, 4, 8}) {
      const auto theta = oracle::random_traceless_hermitian(n, rng);
      const auto psi = oracle::random_state(n, rng);
      const double eps = unit(rng);
      const auto report = fluctuation_report(theta, psi, eps);
      const double direct = oracle::variance_by_trace(theta, psi, eps);
      REQUIRE(std::abs(report.pseudo_variance - direct) < 1e-10);
      CHECK(report.pseudo_variance >= -1e-12);
      CHECK(std::abs(traceless_expectation_scaling(theta, psi, eps) -
                     eps * report.pure_expectation) < 1e-12);
      CHECK(std::abs(direct_variance(pseudo_pure_density(psi, eps), theta) - direct) < 1e-10);
    }
  }
}

TEST_CASE("traceless_expectation_scaling examples") {
  std::mt19937_64 rng(11);
  const auto theta = oracle::random_traceless_hermitian(8, rng);
  const auto psi = oracle::random_state(8, rng);
  CHECK(traceless_expectation_scaling(theta, psi, 0.0) == 0.0);
  CHECK(traceless_expectation_scaling(theta, psi, 1.0) ==
        Approx(psi.dot(theta * psi).real()).epsilon(1e-14));

  const auto uniform = as_complex(uniform_state(make_instance(2, 0)));
  const auto deviation = projector_deviation_operator(uniform);
  for (double eps : {0.0, 0.3, 1.0}) {
    CHECK(traceless_expectation_scaling(deviation, uniform, eps) ==
          Approx(eps * 0.75).epsilon(1e-14));
  }
}

TEST_CASE("projector_deviation_variance examples") {
  CHECK(projector_deviation_variance(4, 1.0) == 0.0);
  CHECK(projector_deviation_variance(4, 0.0) == Approx(0.1875).epsilon(1e-15));
  CHECK(projector_deviation_variance(4, 0.5) == Approx(0.234375).epsilon(1e-15));
  CHECK_THROWS_AS(projector_deviation_variance(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(projector_deviation_variance(4, 1.5), std::invalid_argument);
}

TEST_CASE("property: projector deviation closed form matches the Eq-style and direct routes") {
  std::mt19937_64 rng(42);
  for (std::uint64_t n : {2U, 4U, 8U, 16U}) {
    const auto psi = oracle::random_state(static_cast<Eigen::Index>(n), rng);
    const auto theta = projector_deviation_operator(psi);
    for (int i = 0; i <= 100; ++i) {
      const double eps = i / 100.0;
      const double closed = projector_deviation_variance(n, eps);
      CHECK(closed >= 0.0);
      CHECK(std::abs(closed - pseudo_variance(theta, psi, eps)) < 1e-14);
      CHECK(std::abs(closed - oracle::variance_by_trace(theta, psi, eps)) < 1e-13);
    }
  }
}
