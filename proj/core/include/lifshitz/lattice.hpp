#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lifshitz {

// How an exactly gapless mode (k~ = 0, m = 0) is occupied in the ground state.
//
// positive_limit takes the k~ -> 0+ limit of the massless ground state, so the
// zero mode is filled like any other mode and the global state stays pure.
// half_filled assigns occupation 1/2 to both chiralities, which mixes the
// zero-mode sector.
enum class ZeroModeConvention { positive_limit, half_filled };

// Periodic (optionally twisted) chain of N sites for the discretized
// Lifshitz-Dirac fermion, in units hbar = alpha = k_B = 1.
struct LatticeSpec {
  int n_sites = 2;
  double spacing = 1.0;
  int z = 1;
  double mass = 0.0;
  // Twist theta in [0, 1): psi_N = exp(2 pi i theta) psi_0.
  double boundary_phase = 0.0;
  ZeroModeConvention zero_mode = ZeroModeConvention::positive_limit;

  // Throws Error(invalid_argument) when an invariant is violated.
  void validate() const;

  double length() const { return n_sites * spacing; }
};

struct ModeGrid {
  std::vector<double> momenta;            // k = 2 pi (theta + kappa) / (N eps)
  std::vector<double> effective_momenta;  // k~ = sin(k eps) / eps
  std::vector<double> frequencies;        // omega = sqrt(k~^(2z) + m^2)

  std::size_t size() const { return momenta.size(); }
};

// Inverse temperature; the ground state is beta = +infinity.
class ThermalParams {
 public:
  static ThermalParams ground_state() { return ThermalParams(std::numeric_limits<double>::infinity()); }
  // Throws Error(invalid_argument) unless beta > 0 (infinity allowed).
  static ThermalParams at_beta(double beta);

  double beta() const { return beta_; }
  bool is_ground_state() const { return beta_ == std::numeric_limits<double>::infinity(); }

  friend bool operator==(const ThermalParams&, const ThermalParams&) = default;

 private:
  explicit ThermalParams(double beta) : beta_(beta) {}
  double beta_;
};

enum class Chirality : int { plus = 0, minus = 1 };

// Equal-time correlators <psi_{s,i}^dag psi_{s',j}> over a subsystem, indexed
// site-major and chirality-minor: row 2a + s holds subsystem site a.
struct CorrelationMatrix {
  Eigen::MatrixXcd entries;
  std::vector<int> subsystem;

  Eigen::Index dim() const { return entries.rows(); }
  static Eigen::Index index(Eigen::Index site_position, Chirality s) {
    return 2 * site_position + static_cast<int>(s);
  }
};

// sin(pi x) with exact zeros at integer x.
double sin_pi(double x);
double cos_pi(double x);

// x^n by repeated squaring, n >= 0.
double ipow(double x, int n);

ModeGrid build_mode_grid(const LatticeSpec& spec);

// F = ((-k~)^z / omega) tanh(beta omega / 2), with F = 0 at omega = 0 for
// finite beta. At beta = infinity an exact zero mode follows `zero_mode`.
double thermal_occupation_factor(double effective_momentum, double omega, int z,
                                 ThermalParams beta,
                                 ZeroModeConvention zero_mode = ZeroModeConvention::positive_limit);

// 2x2 block [[<+i|+j>, <+i|-j>], [<-i|+j>, <-i|-j>]] of <psi_{s,i}^dag psi_{s',j}>.
Eigen::Matrix2cd correlator_block(const LatticeSpec& spec, ThermalParams beta, int i, int j);

// Throws Error(duplicate_site), Error(site_out_of_range) or
// Error(invalid_argument) for an empty subsystem.
CorrelationMatrix build_correlation_matrix(const LatticeSpec& spec, ThermalParams beta,
                                           std::span<const int> subsystem);

// Sites {first, ..., first + count - 1} modulo n_sites.
std::vector<int> interval(int count, int first = 0, int n_sites = 0);

// (1 / 2L) sum_{kappa=0}^{N-1} exp(2 pi i (dx/L) kappa) sign(k~_kappa), with
// sign(0) = 0 and lattice spacing L / N.
std::complex<double> offdiagonal_sum_check(int n_sites, double length, double dx);

// Geometric-series limit of the sum above over the positive branch only,
// (1 / 2L) / (1 - exp(2 pi i dx / L)). For L -> infinity its magnitude
// approaches 1 / (4 pi dx).
std::complex<double> offdiagonal_continuum_limit(double length, double dx);

}  // namespace lifshitz
