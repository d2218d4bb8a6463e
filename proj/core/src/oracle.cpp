#include "lifshitz/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "lifshitz/error.hpp"

namespace lifshitz {

namespace {

using cplx = std::complex<double>;
using Pattern = std::uint32_t;

int parity_below(Pattern n, int mode) {
  const Pattern below = (Pattern{1} << mode) - 1;
  return std::popcount(n & below) & 1;
}

// c_p^dag c_q |n> = sign |out>; false when the result vanishes.
bool hop(Pattern n, int p, int q, Pattern& out, double& sign) {
  if (!((n >> q) & 1u)) return false;
  int parity = parity_below(n, q);
  Pattern m = n ^ (Pattern{1} << q);
  if ((m >> p) & 1u) return false;
  parity += parity_below(m, p);
  out = m | (Pattern{1} << p);
  sign = (parity & 1) ? -1.0 : 1.0;
  return true;
}

std::vector<Pattern> sector_basis(int n_modes, int particles) {
  std::vector<Pattern> basis;
  for (Pattern n = 0; n < (Pattern{1} << n_modes); ++n) {
    if (std::popcount(n) == particles) basis.push_back(n);
  }
  return basis;
}

Eigen::MatrixXcd sector_hamiltonian(const Eigen::MatrixXcd& h, const std::vector<Pattern>& basis,
                                    std::vector<int>& lookup) {
  const int n_modes = static_cast<int>(h.rows());
  for (std::size_t i = 0; i < basis.size(); ++i) lookup[basis[i]] = static_cast<int>(i);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (int q = 0; q < n_modes; ++q) {
      for (int p = 0; p < n_modes; ++p) {
        if (h(p, q) == cplx(0.0)) continue;
        Pattern out;
        double sign;
        if (hop(basis[i], p, q, out, sign)) block(lookup[out], i) += sign * h(p, q);
      }
    }
  }
  return block;
}

void check_oracle_size(int n_sites) {
  if (n_sites > kOracleMaxSites) {
    throw Error(ErrorCode::invalid_argument,
                "oracle is limited to N <= " + std::to_string(kOracleMaxSites) + ", got " + std::to_string(n_sites));
  }
}

}  // namespace

double FockState::trace() const {
  double t = 0.0;
  for (const auto& b : blocks) t += b.rho.trace().real();
  return t;
}

double FockState::purity() const {
  double p = 0.0;
  for (const auto& b : blocks) p += b.rho.squaredNorm();
  return p;
}

Eigen::MatrixXcd FockState::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.basis.size(); ++i) {
      for (std::size_t j = 0; j < b.basis.size(); ++j) full(b.basis[i], b.basis[j]) = b.rho(i, j);
    }
  }
  return full;
}

SingleParticleHamiltonian single_particle_hamiltonian(const LatticeSpec& spec) {
  spec.validate();
  check_oracle_size(spec.n_sites);
  const int n = spec.n_sites;
  const double half = 0.5 / spec.spacing;
  const double twist = 2.0 * spec.boundary_phase;
  const cplx forward_wrap(cos_pi(twist), sin_pi(twist));

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int next = (j + 1) % n;
    const int prev = (j + n - 1) % n;
    d(j, next) += (j == n - 1 ? forward_wrap : cplx(1.0)) * half;
    d(j, prev) -= (j == 0 ? std::conj(forward_wrap) : cplx(1.0)) * half;
  }
  const Eigen::MatrixXcd step = cplx(0.0, 1.0) * d;
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < spec.z; ++i) power = power * step;

  SingleParticleHamiltonian h;
  h.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      h.matrix(2 * a, 2 * b) = -power(a, b);
      h.matrix(2 * a + 1, 2 * b + 1) = power(a, b);
    }
    h.matrix(2 * a, 2 * a + 1) = spec.mass;
    h.matrix(2 * a + 1, 2 * a) = spec.mass;
  }
  return h;
}

std::vector<double> single_particle_spectrum(const SingleParticleHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

FockState many_body_state(const LatticeSpec& spec, ThermalParams beta) {
  const SingleParticleHamiltonian h = single_particle_hamiltonian(spec);
  const int n_modes = 2 * spec.n_sites;
  std::vector<int> lookup(std::size_t{1} << n_modes, -1);

  FockState state;
  state.n_sites = spec.n_sites;

  if (beta.is_ground_state()) {
    const std::vector<double> levels = single_particle_spectrum(h);
    int filled = 0;
    for (double e : levels) {
      if (std::abs(e) < 1e-12) {
        throw Error(ErrorCode::degenerate_ground_state,
                    "single-particle zero mode makes the ground state degenerate; use finite beta or mass > 0");
      }
      if (e < 0.0) ++filled;
    }
    FockBlock block;
    block.particles = filled;
    block.basis = sector_basis(n_modes, filled);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sector_hamiltonian(h.matrix, block.basis, lookup));
    const Eigen::VectorXcd ground = solver.eigenvectors().col(0);
    block.rho = ground * ground.adjoint();
    state.blocks.push_back(std::move(block));
    return state;
  }

  std::vector<Eigen::VectorXd> energies;
  std::vector<Eigen::MatrixXcd> vectors;
  double lowest = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n_modes; ++k) {
    FockBlock block;
    block.particles = k;
    block.basis = sector_basis(n_modes, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sector_hamiltonian(h.matrix, block.basis, lookup));
    energies.push_back(solver.eigenvalues());
    vectors.push_back(solver.eigenvectors());
    lowest = std::min(lowest, solver.eigenvalues().minCoeff());
    state.blocks.push_back(std::move(block));
  }

  double partition = 0.0;
  std::vector<Eigen::VectorXd> weights;
  for (const auto& e : energies) {
    Eigen::VectorXd w = (-(e.array() - lowest) * beta.beta()).exp();
    partition += w.sum();
    weights.push_back(std::move(w));
  }
  for (std::size_t k = 0; k < state.blocks.size(); ++k) {
    state.blocks[k].rho = vectors[k] * (weights[k] / partition).asDiagonal() * vectors[k].adjoint();
  }
  return state;
}

Eigen::MatrixXcd oracle_correlators(const FockState& state) {
  const int n_modes = 2 * state.n_sites;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n_modes, n_modes);
  std::vector<int> lookup(state.dimension(), -1);
  for (const auto& block : state.blocks) {
    for (std::size_t i = 0; i < block.basis.size(); ++i) lookup[block.basis[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < block.basis.size(); ++i) {
      for (int q = 0; q < n_modes; ++q) {
        for (int p = 0; p < n_modes; ++p) {
          Pattern out;
          double sign;
          if (hop(block.basis[i], p, q, out, sign)) c(p, q) += sign * block.rho(i, lookup[out]);
        }
      }
    }
  }
  return c;
}

double oracle_energy(const FockState& state, const SingleParticleHamiltonian& h) {
  return h.matrix.cwiseProduct(oracle_correlators(state)).sum().real();
}

double reduced_entropy(const FockState& state, std::span<const int> subsystem) {
  const int n = state.n_sites;
  const int n_modes = 2 * n;
  std::vector<int> new_position(n_modes, -1);
  int next = 0;
  for (int site : subsystem) {
    if (site < 0 || site >= n) throw Error(ErrorCode::site_out_of_range, "subsystem site outside [0, N)");
    if (new_position[2 * site] >= 0) throw Error(ErrorCode::duplicate_site, "subsystem lists a site more than once");
    new_position[2 * site] = next++;
    new_position[2 * site + 1] = next++;
  }
  const int modes_a = next;
  for (int p = 0; p < n_modes; ++p) {
    if (new_position[p] < 0) new_position[p] = next++;
  }
  const Pattern mask_a = (Pattern{1} << modes_a) - 1;

  // Reduced state, block-diagonal in the number of particles inside A.
  std::vector<Eigen::MatrixXcd> reduced(modes_a + 1);
  std::vector<std::vector<Pattern>> reduced_basis(modes_a + 1);
  for (int k = 0; k <= modes_a; ++k) {
    reduced_basis[k] = sector_basis(modes_a, k);
    reduced[k] = Eigen::MatrixXcd::Zero(reduced_basis[k].size(), reduced_basis[k].size());
  }
  std::vector<int> index_in_sector(std::size_t{1} << modes_a, 0);
  for (int k = 0; k <= modes_a; ++k) {
    for (std::size_t i = 0; i < reduced_basis[k].size(); ++i) index_in_sector[reduced_basis[k][i]] = static_cast<int>(i);
  }

  struct Relabelled {
    Pattern rest;
    Pattern a;
    double sign;
    Eigen::Index row;
  };
  for (const auto& block : state.blocks) {
    std::vector<Relabelled> rows;
    rows.reserve(block.basis.size());
    for (std::size_t i = 0; i < block.basis.size(); ++i) {
      const Pattern old = block.basis[i];
      Pattern relabelled = 0;
      int inversions = 0;
      std::vector<int> order;
      for (int p = 0; p < n_modes; ++p) {
        if (!((old >> p) & 1u)) continue;
        for (int earlier : order) inversions += earlier > new_position[p];
        order.push_back(new_position[p]);
        relabelled |= Pattern{1} << new_position[p];
      }
      rows.push_back({relabelled >> modes_a, relabelled & mask_a, (inversions & 1) ? -1.0 : 1.0,
                      static_cast<Eigen::Index>(i)});
    }
    std::sort(rows.begin(), rows.end(), [](const Relabelled& x, const Relabelled& y) { return x.rest < y.rest; });
    for (std::size_t start = 0; start < rows.size();) {
      std::size_t stop = start;
      while (stop < rows.size() && rows[stop].rest == rows[start].rest) ++stop;
      for (std::size_t i = start; i < stop; ++i) {
        const int k = std::popcount(rows[i].a);
        for (std::size_t j = start; j < stop; ++j) {
          reduced[k](index_in_sector[rows[i].a], index_in_sector[rows[j].a]) +=
              rows[i].sign * rows[j].sign * block.rho(rows[i].row, rows[j].row);
        }
      }
      start = stop;
    }
  }

  double entropy = 0.0;
  for (const auto& rho_a : reduced) {
    if (rho_a.size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_a, Eigen::EigenvaluesOnly);
    for (double lambda : solver.eigenvalues()) {
      if (lambda > 1e-15) entropy -= lambda * std::log(lambda);
    }
  }
  return std::max(entropy, 0.0);
}

}  // namespace lifshitz
