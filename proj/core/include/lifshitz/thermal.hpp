#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lifshitz/lattice.hpp"

namespace lifshitz {

enum class CftKind { finite_size, thermal, low_temperature, high_temperature };

// Accepts finite_size, thermal, low_T_expansion, high_T_expansion.
// Throws Error(invalid_kind) otherwise.
CftKind parse_cft_kind(std::string_view name);
std::string_view to_string(CftKind kind);

struct CftParams {
  double central_charge = 1.0;
  double interval = 1.0;  // l
  double spacing = 1.0;   // eps
  double beta = 1.0;      // thermal kinds
  double length = 1.0;    // L, finite_size only
};

// finite_size:  (c/3) ln((L / (pi eps)) sin(pi l / L))
// thermal:      (c/3) ln((beta / (pi eps)) sinh(pi l / beta))
// low_T:        (c/3) [ln(l / eps) + pi^2 l^2 / (6 beta^2)]
// high_T:       (c/3) [pi l / beta - ln(l / beta) + ln(l / (2 pi eps))]
double cft_reference(CftKind kind, const CftParams& params);
double cft_reference(std::string_view kind, const CftParams& params);

struct SweepRow {
  int z = 1;
  double beta = 0.0;
  int n_sites = 0;
  int subsystem_size = 0;
  double spacing = 1.0;
  double mass = 0.0;
  double entropy = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepTable {
  std::vector<SweepRow> rows;

  // Orders rows by (z, beta, N_A, N, eps, m); infinite beta sorts last.
  void sort();
  // Throws Error(invalid_argument) on a repeated parameter tuple.
  void check_unique() const;

  friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

struct SweepGrid {
  std::vector<int> z_values;
  std::vector<double> betas;  // infinity allowed
  std::vector<int> subsystem_sizes;
};

// One contiguous-interval entropy per (z, beta, N_A); the template supplies
// N, eps, m, twist and zero-mode convention. Repeated grid values are merged.
// jobs <= 0 uses the hardware concurrency. Output is sorted and independent
// of jobs.
SweepTable sweep_entropy(const SweepGrid& grid, const LatticeSpec& base, int jobs = 1);

struct FitResult {
  std::vector<std::string> basis;
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  double residual_rms = 0.0;
  double domain_min = 0.0;  // range of x = l beta^(-1/z) actually used
  double domain_max = 0.0;
  std::size_t rows_used = 0;

  // Throws Error(invalid_argument) for an unknown name.
  double coefficient(std::string_view name) const;
  double std_error(std::string_view name) const;
};

inline constexpr double kMaxNormalCondition = 1e12;

// Least squares via normal equations on column-equilibrated data.
// Throws Error(insufficient_data) when rows < columns and
// Error(ill_conditioned) when cond(A^T A) > kMaxNormalCondition.
FitResult fit_linear(const Eigen::MatrixXd& design, const Eigen::VectorXd& values, std::vector<std::string> basis);

inline constexpr double kLowTemperatureWindow = 0.3;
inline constexpr double kHighTemperatureWindow = 3.0;
inline constexpr double kSaturationFraction = 0.9;
inline constexpr double kHighTemperatureMinDecades = 2.0;
inline constexpr std::size_t kMinFitRows = 8;

// Polynomial fit in x = l beta^(-1/z) over rows of exponent z with 0 < x < 0.3.
// degree 2 gives basis {1, x, x^2}. Rows of that z must share (N, N_A, eps, m).
FitResult fit_low_temperature(const SweepTable& table, int z, int degree = 2);

// Fit on {1, x, ln(eps^z / beta)} over rows with 3 < x < N_A / 3 and
// S < 0.9 S_max. Throws Error(regime_unreachable) when no row qualifies or
// the qualifying betas span less than two decades.
FitResult fit_high_temperature(const SweepTable& table, int z);

struct RegimeScales {
  double critical_temperature;  // (eps N_A)^(-z)
  double max_entropy;           // 2 N_A ln 2
};
RegimeScales regime_scales(const LatticeSpec& spec, int subsystem_size);

// Default inverse temperatures: 24 points with x evenly spaced over
// [0.02, 0.29] (low) or geometrically inside (3, N_A / 3) (high).
std::vector<double> low_temperature_betas(int z, double interval);
std::vector<double> high_temperature_betas(int z, double interval, double spacing);

}  // namespace lifshitz
