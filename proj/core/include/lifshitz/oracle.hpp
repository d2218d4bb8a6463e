#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lifshitz/lattice.hpp"

namespace lifshitz {

// Brute-force many-body reference for tiny chains. Modes are labelled
// p = 2 * site + chirality; occupation basis state bits follow the same order
// and |n> = (c_0^dag)^{n_0} (c_1^dag)^{n_1} ... |0>.

inline constexpr int kOracleMaxSites = 6;

struct SingleParticleHamiltonian {
  Eigen::MatrixXcd matrix;  // 2N x 2N

  int n_sites() const { return static_cast<int>(matrix.rows() / 2); }
};

// Density matrix restricted to one particle-number sector.
struct FockBlock {
  int particles = 0;
  std::vector<std::uint32_t> basis;  // occupation bit patterns
  Eigen::MatrixXcd rho;
};

// Density matrix over the 4^N occupation space, stored block-diagonally in
// particle number (the Hamiltonian conserves it).
struct FockState {
  int n_sites = 0;
  std::vector<FockBlock> blocks;

  std::size_t dimension() const { return std::size_t{1} << (2 * n_sites); }
  double trace() const;
  // Tr rho^2.
  double purity() const;
  // Dense 4^N x 4^N matrix; only sensible for N <= 4.
  Eigen::MatrixXcd dense() const;
};

// Position-space h = -sigma^3 (x) (iD)^z + m sigma^1 (x) 1, D the twisted
// periodic centered difference. Throws Error(invalid_argument) for N > 6.
SingleParticleHamiltonian single_particle_hamiltonian(const LatticeSpec& spec);

// Ascending eigenvalues of h.
std::vector<double> single_particle_spectrum(const SingleParticleHamiltonian& h);

// beta = infinity: projector on the filled Fermi sea, Error(degenerate_ground_state)
// if h has an eigenvalue within 1e-12 of zero. Finite beta: exp(-beta H) / Z.
FockState many_body_state(const LatticeSpec& spec, ThermalParams beta);

// <c_p^dag c_q> = Tr(rho c_p^dag c_q), all 2N x 2N entries.
Eigen::MatrixXcd oracle_correlators(const FockState& state);

// Tr(rho H) for H = sum h_pq c_p^dag c_q.
double oracle_energy(const FockState& state, const SingleParticleHamiltonian& h);

// von Neumann entropy of the reduced state on `subsystem` (in nats).
double reduced_entropy(const FockState& state, std::span<const int> subsystem);

}  // namespace lifshitz
