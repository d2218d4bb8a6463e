#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "lifshitz/entropy.hpp"
#include "lifshitz/error.hpp"
#include "lifshitz/oracle.hpp"
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

ThermalParams at(double beta) {
  return std::isinf(beta) ? ThermalParams::ground_state() : ThermalParams::at_beta(beta);
}

void check_spectrum(const std::vector<double>& got, std::vector<double> expected) {
  std::sort(expected.begin(), expected.end());
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-10);
}

}  // namespace

TEST_CASE("single-particle spectra") {
  // Every mode of N=2 has sin(k) = 0, so the massless spectrum is all zeros.
  check_spectrum(single_particle_spectrum(single_particle_hamiltonian(chain(2, 1, 0))), {0, 0, 0, 0});
  check_spectrum(single_particle_spectrum(single_particle_hamiltonian(chain(4, 1, 0))), {-1, -1, 0, 0, 0, 0, 1, 1});
  const double r = std::sqrt(10.0);
  check_spectrum(single_particle_spectrum(single_particle_hamiltonian(chain(4, 2, 3))), {-3, -3, -r, -r, 3, 3, r, r});
}

TEST_CASE("single-particle spectrum is +-omega of the mode grid") {
  auto g = ref::rng(20);
  for (int t = 0; t < 40; ++t) {
    LatticeSpec s = chain(ref::uniform_int(g, 2, 6), ref::uniform_int(g, 1, 5), t % 3 ? ref::uniform(g, 0, 2) : 0.0);
    s.spacing = ref::uniform(g, 0.5, 2);
    s.boundary_phase = t % 2 ? ref::uniform(g, 0, 1) : 0.0;
    const auto h = single_particle_hamiltonian(s);
    CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    std::vector<double> expected;
    for (double w : build_mode_grid(s).frequencies) {
      expected.push_back(w);
      expected.push_back(-w);
    }
    check_spectrum(single_particle_spectrum(h), expected);
  }
}

TEST_CASE("oracle size cap") {
  try {
    single_particle_hamiltonian(chain(7, 1, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("ground state of N=2, m=1") {
  const LatticeSpec s = chain(2, 1, 1);
  const FockState state = many_body_state(s, ThermalParams::ground_state());
  CHECK(state.dimension() == 16);
  CHECK(std::abs(state.trace() - 1) < 1e-12);
  CHECK(std::abs(state.purity() - 1) < 1e-12);
  CHECK(oracle_energy(state, single_particle_hamiltonian(s)) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("massless ground state is degenerate") {
  try {
    many_body_state(chain(4, 1, 0), ThermalParams::ground_state());
    FAIL("expected DegenerateGroundState");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_ground_state);
  }
}

TEST_CASE("Gibbs state properties") {
  const FockState hot = many_body_state(chain(3, 2, 0.7), ThermalParams::at_beta(1e-9));
  const Eigen::MatrixXcd flat = hot.dense();
  CHECK((flat - Eigen::MatrixXcd::Identity(64, 64) / 64.0).cwiseAbs().maxCoeff() < 1e-9);

  const FockState state = many_body_state(chain(4, 2, 0.5), ThermalParams::at_beta(2));
  const Eigen::MatrixXcd rho = state.dense();
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("reduced entropy of pure states") {
  // A single occupation pattern is a product state.
  FockState product;
  product.n_sites = 3;
  product.blocks.push_back({2, {0b010010u}, Eigen::MatrixXcd::Ones(1, 1)});
  for (const std::vector<int>& cut : {std::vector<int>{0}, {1}, {0, 2}, {2, 1}}) {
    CHECK(reduced_entropy(product, cut) == 0.0);
  }
  const FockState ground = many_body_state(chain(4, 3, 0.8), ThermalParams::ground_state());
  CHECK(reduced_entropy(ground, std::vector<int>{0, 1, 2, 3}) < 1e-10);
  CHECK(reduced_entropy(ground, std::vector<int>{}) < 1e-10);
}

TEST_CASE("oracle matches the correlation method") {
  const double inf = std::numeric_limits<double>::infinity();
  for (int n : {3, 4}) {
    for (int z : {1, 2, 3}) {
      for (double m : {0.5, 1.0}) {
        for (double beta : {inf, 5.0, 1.0}) {
          const LatticeSpec s = chain(n, z, m);
          const FockState state = many_body_state(s, at(beta));
          std::vector<int> all(n);
          for (int i = 0; i < n; ++i) all[i] = i;
          const auto lattice = build_correlation_matrix(s, at(beta), all).entries;
          CHECK((oracle_correlators(state) - lattice).cwiseAbs().maxCoeff() < 1e-10);
          for (int na : {1, 2}) {
            const auto sites = interval(na);
            CHECK(std::abs(reduced_entropy(state, sites) - entropy_of(s, at(beta), sites).entropy) < 1e-8);
          }
        }
      }
    }
  }
}

TEST_CASE("massless chains at finite temperature") {
  for (int z : {1, 2, 3}) {
    const LatticeSpec s = chain(4, z, 0);
    const FockState state = many_body_state(s, ThermalParams::at_beta(3));
    for (const std::vector<int>& sites : {std::vector<int>{0}, {0, 1}, {1, 3}, {3, 0, 2}}) {
      CHECK(std::abs(reduced_entropy(state, sites) - entropy_of(s, ThermalParams::at_beta(3), sites).entropy) < 1e-8);
    }
  }
}

TEST_CASE("non-contiguous and reordered subsystems carry the right fermion signs") {
  const LatticeSpec s = chain(5, 1, 0.4);
  s.validate();
  const FockState state = many_body_state(s, ThermalParams::ground_state());
  for (const std::vector<int>& sites : {std::vector<int>{0, 2}, {4, 1}, {3, 0, 2}, {1, 4, 2, 0}}) {
    CHECK(std::abs(reduced_entropy(state, sites) - entropy_of(s, ThermalParams::ground_state(), sites).entropy) <
          1e-8);
  }
}

TEST_CASE("pure oracle states have equal entropy on complementary halves") {
  for (int z : {1, 2, 3}) {
    const FockState state = many_body_state(chain(4, z, 0.5), ThermalParams::ground_state());
    CHECK(std::abs(reduced_entropy(state, std::vector<int>{0}) - reduced_entropy(state, std::vector<int>{1, 2, 3})) <
          1e-10);
    CHECK(std::abs(reduced_entropy(state, std::vector<int>{0, 1}) - reduced_entropy(state, std::vector<int>{2, 3})) <
          1e-10);
  }
}

TEST_CASE("reduced entropy rejects bad subsystems") {
  const FockState state = many_body_state(chain(3, 1, 1), ThermalParams::at_beta(1));
  CHECK_THROWS_AS(reduced_entropy(state, std::vector<int>{0, 0}), Error);
  CHECK_THROWS_AS(reduced_entropy(state, std::vector<int>{3}), Error);
}
