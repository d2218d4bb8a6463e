#include "lifshitz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "lifshitz/error.hpp"

namespace lifshitz {

namespace {

using cplx = std::complex<double>;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::invalid_argument, what); }

// Per-mode weights entering the correlators, plus the N-th roots of unity
// used for exp(i k_kappa d eps). Entries for offset d cost O(N).
class ModeSums {
 public:
  ModeSums(const LatticeSpec& spec, ThermalParams beta) : n_(spec.n_sites), theta_(spec.boundary_phase) {
    const ModeGrid grid = build_mode_grid(spec);
    diagonal_.resize(n_);
    cross_.resize(n_);
    for (int kappa = 0; kappa < n_; ++kappa) {
      const double omega = grid.frequencies[kappa];
      diagonal_[kappa] = thermal_occupation_factor(grid.effective_momenta[kappa], omega, spec.z, beta,
                                                   spec.zero_mode);
      if (omega > 0.0) {
        const double occupation = beta.is_ground_state() ? 1.0 : std::tanh(0.5 * beta.beta() * omega);
        cross_[kappa] = spec.mass / omega * occupation;
      } else {
        cross_[kappa] = 0.0;
      }
    }

    roots_.resize(n_);
    roots_[0] = cplx(1.0, 0.0);
    for (int r = 1; 2 * r <= n_; ++r) {
      const double x = 2.0 * r / n_;
      roots_[r] = cplx(cos_pi(x), sin_pi(x));
      roots_[n_ - r] = std::conj(roots_[r]);
    }
  }

  // (1/2N) sum_kappa exp(i k_kappa d eps) * {F_kappa, m/omega tanh}.
  std::pair<cplx, cplx> at(int d) const {
    const int step = ((d % n_) + n_) % n_;
    cplx diag_sum = 0.0;
    cplx cross_sum = 0.0;
    int idx = 0;
    for (int kappa = 0; kappa < n_; ++kappa) {
      diag_sum += roots_[idx] * diagonal_[kappa];
      cross_sum += roots_[idx] * cross_[kappa];
      idx += step;
      if (idx >= n_) idx -= n_;
    }
    cplx twist(1.0, 0.0);
    if (theta_ != 0.0) {
      const double x = 2.0 * theta_ * d / n_;
      twist = cplx(cos_pi(x), sin_pi(x));
    }
    const double norm = 0.5 / n_;
    return {twist * diag_sum * norm, twist * cross_sum * norm};
  }

 private:
  int n_;
  double theta_;
  std::vector<double> diagonal_;
  std::vector<double> cross_;
  std::vector<cplx> roots_;
};

Eigen::Matrix2cd assemble_block(bool same_site, const std::pair<cplx, cplx>& sums) {
  const double delta = same_site ? 0.5 : 0.0;
  Eigen::Matrix2cd block;
  block(0, 0) = delta + sums.first;
  block(1, 1) = delta - sums.first;
  block(0, 1) = -sums.second;
  block(1, 0) = -sums.second;
  return block;
}

}  // namespace

void LatticeSpec::validate() const {
  if (n_sites < 2) invalid("n_sites must be >= 2, got " + std::to_string(n_sites));
  if (!(spacing > 0.0) || !std::isfinite(spacing)) invalid("spacing must be positive and finite");
  if (z < 1) invalid("z_exponent must be >= 1, got " + std::to_string(z));
  if (!(mass >= 0.0) || !std::isfinite(mass)) invalid("mass must be non-negative and finite");
  if (!(boundary_phase >= 0.0 && boundary_phase < 1.0)) invalid("boundary_phase must lie in [0, 1)");
}

ThermalParams ThermalParams::at_beta(double beta) {
  if (!(beta > 0.0)) invalid("beta must be positive or +infinity");
  return ThermalParams(beta);
}

double sin_pi(double x) {
  if (x < 0.0) return -sin_pi(-x);
  double r = std::fmod(x, 2.0);
  double sign = 1.0;
  if (r >= 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r == 0.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

double cos_pi(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  if (r == 0.5) return 0.0;
  if (r > 0.5) return -cos_pi(1.0 - r);
  return r <= 0.25 ? std::cos(std::numbers::pi * r) : std::sin(std::numbers::pi * (0.5 - r));
}

double ipow(double x, int n) {
  double result = 1.0;
  while (n > 0) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

ModeGrid build_mode_grid(const LatticeSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  ModeGrid grid;
  grid.momenta.resize(n);
  grid.effective_momenta.resize(n);
  grid.frequencies.resize(n);
  for (int kappa = 0; kappa < n; ++kappa) {
    const double phase = 2.0 * (spec.boundary_phase + kappa) / n;  // k eps / pi
    grid.momenta[kappa] = std::numbers::pi * phase / spec.spacing;
    const double kt = sin_pi(phase) / spec.spacing;
    grid.effective_momenta[kappa] = kt;
    // sqrt(p * p) == |p| exactly, so massless ratios (-k~)^z / omega are exactly +-1.
    const double p = ipow(kt, spec.z);
    grid.frequencies[kappa] = std::sqrt(p * p + spec.mass * spec.mass);
  }
  return grid;
}

double thermal_occupation_factor(double effective_momentum, double omega, int z, ThermalParams beta,
                                 ZeroModeConvention zero_mode) {
  if (omega == 0.0) {
    if (!beta.is_ground_state() || zero_mode == ZeroModeConvention::half_filled) return 0.0;
    return (z % 2 == 0) ? 1.0 : -1.0;
  }
  const double ratio = std::clamp(ipow(-effective_momentum, z) / omega, -1.0, 1.0);
  if (beta.is_ground_state()) return ratio;
  return ratio * std::tanh(0.5 * beta.beta() * omega);
}

Eigen::Matrix2cd correlator_block(const LatticeSpec& spec, ThermalParams beta, int i, int j) {
  spec.validate();
  if (i < 0 || i >= spec.n_sites || j < 0 || j >= spec.n_sites) {
    throw Error(ErrorCode::site_out_of_range, "site index outside [0, N)");
  }
  const ModeSums sums(spec, beta);
  return assemble_block(i == j, sums.at(j - i));
}

CorrelationMatrix build_correlation_matrix(const LatticeSpec& spec, ThermalParams beta,
                                           std::span<const int> subsystem) {
  spec.validate();
  if (subsystem.empty()) invalid("subsystem must contain at least one site");
  std::vector<int> sorted(subsystem.begin(), subsystem.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= spec.n_sites) {
    throw Error(ErrorCode::site_out_of_range, "subsystem site outside [0, " + std::to_string(spec.n_sites) + ")");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::duplicate_site, "subsystem lists a site more than once");
  }

  const ModeSums sums(spec, beta);
  // Entries depend only on j - i; evaluate each distinct offset once.
  std::map<int, std::pair<cplx, cplx>> by_offset;
  const auto na = static_cast<Eigen::Index>(subsystem.size());
  for (Eigen::Index a = 0; a < na; ++a) {
    for (Eigen::Index b = 0; b < na; ++b) {
      const int d = subsystem[b] - subsystem[a];
      if (!by_offset.contains(d)) by_offset.emplace(d, sums.at(d));
    }
  }

  CorrelationMatrix result;
  result.subsystem.assign(subsystem.begin(), subsystem.end());
  result.entries.resize(2 * na, 2 * na);
  for (Eigen::Index a = 0; a < na; ++a) {
    for (Eigen::Index b = 0; b < na; ++b) {
      const int d = subsystem[b] - subsystem[a];
      result.entries.block<2, 2>(2 * a, 2 * b) = assemble_block(a == b, by_offset.at(d));
    }
  }
  return result;
}

std::vector<int> interval(int count, int first, int n_sites) {
  if (count < 1) invalid("interval needs at least one site");
  std::vector<int> sites(count);
  for (int a = 0; a < count; ++a) {
    sites[a] = n_sites > 0 ? (first + a) % n_sites : first + a;
  }
  return sites;
}

std::complex<double> offdiagonal_sum_check(int n_sites, double length, double dx) {
  if (n_sites < 2) invalid("offdiagonal_sum_check needs N >= 2");
  if (!(length > 0.0) || !(dx > 0.0 && dx < length)) invalid("offdiagonal_sum_check needs 0 < dx < L");
  const double ratio = dx / length;
  cplx sum = 0.0;
  for (int kappa = 0; kappa < n_sites; ++kappa) {
    const double kt = sin_pi(2.0 * kappa / n_sites);
    const double sign = kt > 0.0 ? 1.0 : (kt < 0.0 ? -1.0 : 0.0);
    if (sign == 0.0) continue;
    const double x = std::fmod(2.0 * ratio * kappa, 2.0);
    sum += sign * cplx(cos_pi(x), sin_pi(x));
  }
  return sum / (2.0 * length);
}

std::complex<double> offdiagonal_continuum_limit(double length, double dx) {
  if (!(length > 0.0) || !(dx > 0.0 && dx < length)) invalid("offdiagonal_continuum_limit needs 0 < dx < L");
  const double x = 2.0 * dx / length;
  const cplx denominator = cplx(1.0 - cos_pi(x), -sin_pi(x));
  return 1.0 / (2.0 * length * denominator);
}

}  // namespace lifshitz
