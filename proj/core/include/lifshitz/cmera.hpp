#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lifshitz {

// Scale-dependent entangler of the continuum theory with a sharp UV cutoff.
// Scale u <= 0 maps to momentum k = cutoff * e^u.
struct CmeraParams {
  int z = 1;
  double mass = 0.0;
  double cutoff = 1.0;  // 1 / eps
  double u_min = -5.0;

  // Throws Error(invalid_argument).
  void validate() const;
};

// phi_k = (1/2) asin(k^z / sqrt(k^(2z) + m^2)) - (-1)^z pi / 4, k > 0.
double bogoliubov_angle(double k, int z, double mass);

// Pointwise minimizer of (-k)^z cos(2 phi) - m sin(2 phi), any real k;
// returns 0 when k^z = m = 0.
double minimizing_angle(double k, int z, double mass);

// g(u) = -phi + d phi / du from the closed-form angle; for m = 0 this is
// (pi/4)((-1)^z - 1). Throws Error(invalid_argument) for u > 0.
double g_closed_form(double u, int z, double mass, double cutoff);

struct AngleProfile {
  std::vector<double> u;    // strictly increasing, <= 0
  std::vector<double> phi;
};

// Closed-form angle on `points` evenly spaced scales over [u_min, 0].
AngleProfile sample_angle_profile(const CmeraParams& params, int points);

inline constexpr double kMinSamplesPerDecade = 100.0;

// g = -phi + dphi/du with five-point finite differences (one-sided at the
// ends). Throws Error(insufficient_sampling) when any step exceeds
// ln(10) / 100 or fewer than five samples are given.
std::vector<double> g_from_phi_numeric(const AngleProfile& profile, double cutoff);

// Evenly spaced grid on [-cutoff, cutoff].
std::vector<double> symmetric_k_grid(double cutoff, int points);

// Trapezoid rule for int dk/(2 pi) [(-k)^z cos(2 phi) - m sin(2 phi)] on a
// grid symmetric about 0 and inside [-cutoff, cutoff].
double energy_density(std::span<const double> k, std::span<const double> phi, int z, double mass, double cutoff);

// g(u)^2 / 3.
double metric_guu(double u, int z, double mass, double cutoff);

// (2 |g| / sqrt 3) ln(l / eps) for a constant g. Throws
// Error(degenerate_interval) unless l > eps > 0.
double geodesic_length(double g, double interval, double spacing);

// (c / (pi sqrt 3)) * geodesic length with the massless g of exponent z:
// (c/3) ln(l/eps) for odd z, 0 for even z.
double ee_cmera(int z, double interval, double spacing, double central_charge);

// Ansatz for u-dependent metrics: length of the semicircle x = (l/2) cos t,
// r = (l/2) sin t in ds^2 = (g_uu(u) dr^2 + dx^2) / r^2 with u = ln(eps / r),
// cut where r = eps. g_uu == 1 gives 2 ln(cot(t0 / 2)), sin t0 = 2 eps / l.
double semicircle_length(const std::function<double(double)>& guu_of_u, double interval, double spacing,
                         int points = 4001);

struct CmeraProfileRow {
  double u;
  double phi;
  double g;
  double guu;
};

// Closed-form angle, numeric g and metric on `points` scales over [u_min, 0].
std::vector<CmeraProfileRow> cmera_profile(const CmeraParams& params, int points);

}  // namespace lifshitz
