#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lifshitz/entropy.hpp"
#include "lifshitz/error.hpp"
#include "reference.hpp"

using namespace lifshitz;

namespace {

LatticeSpec chain(int n, int z, double m) {
  LatticeSpec s;
  s.n_sites = n;
  s.z = z;
  s.mass = m;
  return s;
}

double entropy(const LatticeSpec& s, ThermalParams beta, int na, int first = 0) {
  return entropy_of(s, beta, interval(na, first, s.n_sites)).entropy;
}

}  // namespace

TEST_CASE("eigenvalues of simple matrices") {
  CHECK(hermitian_eigenvalues(Eigen::MatrixXcd::Identity(4, 4)) == std::vector<double>{1, 1, 1, 1});
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
  d(2, 2) = 1;
  d(3, 3) = 1;
  const auto e = hermitian_eigenvalues(d);
  for (int i = 0; i < 4; ++i) CHECK(e[i] == doctest::Approx(i < 2 ? 0.0 : 1.0).epsilon(1e-15));
  CHECK(hermitian_eigenvalues(Eigen::MatrixXcd(0, 0)).empty());
}

TEST_CASE("eigenvalues of the N=4 half-filled matrix") {
  LatticeSpec s = chain(4, 1, 0);
  s.zero_mode = ZeroModeConvention::half_filled;
  const auto e = hermitian_eigenvalues(build_correlation_matrix(s, ThermalParams::ground_state(), interval(2)));
  REQUIRE(e.size() == 4);
  const double expected[] = {0.25, 0.25, 0.75, 0.75};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(e[i] - expected[i]) < 1e-14);
}

TEST_CASE("non-Hermitian input is rejected") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
  m(0, 1) = 1e-6;
  try {
    hermitian_eigenvalues(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_hermitian);
  }
  m(0, 1) = 5e-10;  // inside tolerance
  CHECK(hermitian_eigenvalues(m).size() == 3);
}

TEST_CASE("entropy functional") {
  CHECK(entanglement_entropy(std::vector<double>{0, 1, 0, 1}) == 0.0);
  CHECK(entanglement_entropy(std::vector<double>{0.5}) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  const double quarter = 4 * ref::binary_entropy(0.25);
  CHECK(quarter == doctest::Approx(2.249341).epsilon(1e-6));
  CHECK(entanglement_entropy(std::vector<double>{0.25, 0.25, 0.75, 0.75}) == doctest::Approx(quarter).epsilon(1e-14));
  // Clamping inside the tolerance, error outside.
  CHECK(entanglement_entropy(std::vector<double>{-5e-10, 1 + 5e-10}) == 0.0);
  for (double bad : {-2e-9, 1 + 2e-9, std::nan("")}) {
    try {
      entanglement_entropy(std::vector<double>{0.5, bad});
      FAIL("expected EigenvalueOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::eigenvalue_out_of_range);
    }
  }
  CHECK(binary_entropy(1e-16) == 0.0);
  CHECK(binary_entropy(1 - 1e-16) == 0.0);
  auto g = ref::rng(10);
  for (int t = 0; t < 200; ++t) {
    const double c = ref::uniform(g, 1e-12, 1 - 1e-12);
    CHECK(binary_entropy(c) == doctest::Approx(ref::binary_entropy(c)).epsilon(1e-12));
  }
}

TEST_CASE("entropy_of examples") {
  const auto inf = ThermalParams::ground_state();
  CHECK(entropy(chain(100, 2, 0), inf, 30) < 1e-10);
  CHECK(std::abs(entropy(chain(100, 3, 0), inf, 30) - entropy(chain(100, 1, 0), inf, 30)) < 1e-10);
  for (int z : {1, 2, 4, 7}) {
    for (double m : {0.0, 1.0}) {
      CHECK(std::abs(entropy(chain(60, z, m), ThermalParams::at_beta(1e-6), 5) - 10 * std::numbers::ln2) < 1e-6);
    }
  }
  const EntropyPoint p = entropy_of(chain(30, 3, 0.2), ThermalParams::at_beta(2), interval(4), true);
  CHECK(p.params.n_sites == 30);
  CHECK(p.params.subsystem_size == 4);
  CHECK(p.params.z == 3);
  CHECK(p.params.mass == 0.2);
  CHECK(p.params.beta == 2);
  REQUIRE(p.eigenvalues.has_value());
  CHECK(p.eigenvalues->size() == 8);
  CHECK(entanglement_entropy(*p.eigenvalues) == p.entropy);
  CHECK_FALSE(entropy_of(chain(30, 3, 0.2), ThermalParams::at_beta(2), interval(4)).eigenvalues.has_value());
}

TEST_CASE("entropy bounds over random parameters") {
  auto g = ref::rng(11);
  for (int t = 0; t < 60; ++t) {
    LatticeSpec s = chain(ref::uniform_int(g, 2, 120), ref::uniform_int(g, 1, 8), t % 2 ? 0.0 : ref::uniform(g, 0, 2));
    s.boundary_phase = t % 3 ? 0.0 : ref::uniform(g, 0, 1);
    const int na = ref::uniform_int(g, 1, s.n_sites);
    const double beta = t % 4 == 0 ? std::numeric_limits<double>::infinity() : std::exp(ref::uniform(g, -5, 5));
    const auto bp = std::isinf(beta) ? ThermalParams::ground_state() : ThermalParams::at_beta(beta);
    const double value = entropy(s, bp, na);
    CHECK(value >= 0.0);
    CHECK(value <= 2 * na * std::numbers::ln2 + 1e-9);
  }
}

TEST_CASE("pure ground state: S(A) = S(complement)") {
  for (int z : {1, 2, 3}) {
    for (double m : {0.0, 0.6}) {
      const LatticeSpec s = chain(100, z, m);
      for (int na : {5, 17, 33, 50}) {
        CHECK(std::abs(entropy(s, ThermalParams::ground_state(), na) -
                       entropy(s, ThermalParams::ground_state(), s.n_sites - na, na)) < 1e-8);
      }
    }
  }
}

TEST_CASE("entropy grows as temperature rises") {
  for (int z : {1, 2, 3}) {
    for (double m : {0.0, 0.5}) {
      const LatticeSpec s = chain(80, z, m);
      double previous = -1;
      for (double beta : {100.0, 10.0, 1.0, 0.1, 0.001}) {
        const double value = entropy(s, ThermalParams::at_beta(beta), 8);
        CHECK(value >= previous - 1e-12);
        previous = value;
      }
    }
  }
}

TEST_CASE("area law with c = 2") {
  const LatticeSpec s = chain(100, 1, 0);
  std::vector<double> x, y;
  for (int na = 5; na <= 50; ++na) {
    x.push_back(std::log(100 / std::numbers::pi * std::sin(std::numbers::pi * na / 100)));
    y.push_back(entropy(s, ThermalParams::ground_state(), na));
  }
  const double c = 3 * ref::slope(x, y);
  CHECK(c >= 1.95);
  CHECK(c <= 2.05);
}

TEST_CASE("entropy is translation invariant") {
  const LatticeSpec s = chain(70, 3, 0.3);
  const auto beta = ThermalParams::at_beta(4);
  const double base = entropy(s, beta, 12);
  for (int first : {1, 20, 65}) CHECK(std::abs(entropy(s, beta, 12, first) - base) < 1e-11);
}
