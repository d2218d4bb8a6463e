#include "lifshitz/cmera.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lifshitz/error.hpp"
#include "lifshitz/lattice.hpp"

namespace lifshitz {

namespace {

using std::numbers::pi;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::invalid_argument, what); }

double parity_sign(int z) { return (z % 2 == 0) ? 1.0 : -1.0; }

// Weights w_j with sum_j w_j f(x_j) = p'(x0), p the interpolating polynomial.
std::vector<double> derivative_weights(double x0, std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> weights(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      if (m == j) continue;
      double term = 1.0 / (nodes[j] - nodes[m]);
      for (std::size_t l = 0; l < n; ++l) {
        if (l != j && l != m) term *= (x0 - nodes[l]) / (nodes[j] - nodes[l]);
      }
      weights[j] += term;
    }
  }
  return weights;
}

void check_z(int z) {
  if (z < 1) invalid("z must be >= 1");
}

}  // namespace

void CmeraParams::validate() const {
  check_z(z);
  if (!(mass >= 0.0) || !std::isfinite(mass)) invalid("mass must be non-negative");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) invalid("cutoff must be positive");
  if (!(u_min < 0.0) || !std::isfinite(u_min)) invalid("u range must be [u_min, 0] with u_min < 0");
}

double bogoliubov_angle(double k, int z, double mass) {
  check_z(z);
  if (!(k > 0.0)) invalid("bogoliubov_angle needs k > 0");
  const double kz = ipow(k, z);
  const double ratio = kz / std::sqrt(kz * kz + mass * mass);
  return 0.5 * std::asin(std::min(ratio, 1.0)) - parity_sign(z) * pi / 4.0;
}

double minimizing_angle(double k, int z, double mass) {
  check_z(z);
  const double p = ipow(-k, z);
  const double omega = std::sqrt(p * p + mass * mass);
  if (omega == 0.0) return 0.0;
  return pi / 4.0 + 0.5 * std::asin(std::clamp(p / omega, -1.0, 1.0));
}

double g_closed_form(double u, int z, double mass, double cutoff) {
  check_z(z);
  if (u > 0.0) invalid("g is defined for u <= 0");
  if (mass == 0.0) return pi / 4.0 * (parity_sign(z) - 1.0);
  const double k = cutoff * std::exp(u);
  const double kz = ipow(k, z);
  return -bogoliubov_angle(k, z, mass) + z * mass * kz / (2.0 * (kz * kz + mass * mass));
}

AngleProfile sample_angle_profile(const CmeraParams& params, int points) {
  params.validate();
  if (points < 2) invalid("profile needs at least two points");
  AngleProfile profile;
  for (int i = 0; i < points; ++i) {
    const double u = i == points - 1 ? 0.0 : params.u_min * (1.0 - static_cast<double>(i) / (points - 1));
    profile.u.push_back(u);
    profile.phi.push_back(bogoliubov_angle(params.cutoff * std::exp(u), params.z, params.mass));
  }
  return profile;
}

std::vector<double> g_from_phi_numeric(const AngleProfile& profile, double cutoff) {
  constexpr std::size_t kStencil = 5;
  const std::size_t n = profile.u.size();
  if (profile.phi.size() != n) invalid("profile u and phi lengths differ");
  if (!(cutoff > 0.0)) invalid("cutoff must be positive");
  if (n < kStencil) {
    throw Error(ErrorCode::insufficient_sampling, "need at least 5 samples, got " + std::to_string(n));
  }
  const double max_step = std::log(10.0) / kMinSamplesPerDecade;
  for (std::size_t i = 1; i < n; ++i) {
    const double step = profile.u[i] - profile.u[i - 1];
    if (!(step > 0.0)) invalid("profile scales must be strictly increasing");
    if (step > max_step) {
      throw Error(ErrorCode::insufficient_sampling,
                  "scale step " + std::to_string(step) + " exceeds " + std::to_string(max_step));
    }
  }
  if (profile.u.back() > 0.0) invalid("profile scales must be <= 0");

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first = std::min(i >= 2 ? i - 2 : 0, n - kStencil);
    const std::span<const double> nodes(profile.u.data() + first, kStencil);
    const std::vector<double> w = derivative_weights(profile.u[i], nodes);
    double derivative = 0.0;
    for (std::size_t j = 0; j < kStencil; ++j) derivative += w[j] * profile.phi[first + j];
    g[i] = -profile.phi[i] + derivative;
  }
  return g;
}

std::vector<double> symmetric_k_grid(double cutoff, int points) {
  if (!(cutoff > 0.0)) invalid("cutoff must be positive");
  if (points < 2) invalid("k grid needs at least two points");
  std::vector<double> k(points);
  for (int i = 0; i < points; ++i) {
    const int mirrored = points - 1 - i;
    k[i] = cutoff * (i - mirrored) / (points - 1.0);
  }
  return k;
}

double energy_density(std::span<const double> k, std::span<const double> phi, int z, double mass, double cutoff) {
  check_z(z);
  const std::size_t n = k.size();
  if (phi.size() != n || n < 2) invalid("energy_density needs matching k and phi of length >= 2");
  const double tolerance = 1e-12 * cutoff;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(k[i] + k[n - 1 - i]) > tolerance) invalid("k grid must be symmetric about 0");
    if (std::abs(k[i]) > cutoff + tolerance) invalid("k grid exceeds the cutoff");
    if (i > 0 && !(k[i] > k[i - 1])) invalid("k grid must be increasing");
  }
  auto integrand = [&](std::size_t i) {
    return (ipow(-k[i], z) * std::cos(2.0 * phi[i]) - mass * std::sin(2.0 * phi[i])) / (2.0 * pi);
  };
  double total = 0.0;
  for (std::size_t i = 1; i < n; ++i) total += 0.5 * (k[i] - k[i - 1]) * (integrand(i) + integrand(i - 1));
  return total;
}

double metric_guu(double u, int z, double mass, double cutoff) {
  const double g = g_closed_form(u, z, mass, cutoff);
  return g * g / 3.0;
}

double geodesic_length(double g, double interval, double spacing) {
  if (!(spacing > 0.0) || !(interval > spacing)) {
    throw Error(ErrorCode::degenerate_interval, "need l > eps > 0");
  }
  return 2.0 * std::abs(g) / std::sqrt(3.0) * std::log(interval / spacing);
}

double ee_cmera(int z, double interval, double spacing, double central_charge) {
  const double g = g_closed_form(0.0, z, 0.0, 1.0 / spacing);
  return central_charge / (pi * std::sqrt(3.0)) * geodesic_length(g, interval, spacing);
}

double semicircle_length(const std::function<double(double)>& guu_of_u, double interval, double spacing, int points) {
  if (!(spacing > 0.0) || !(2.0 * spacing < interval)) {
    throw Error(ErrorCode::degenerate_interval, "need l > 2 eps > 0");
  }
  if (points < 3) invalid("semicircle quadrature needs at least three points");
  if (points % 2 == 0) ++points;
  // s = ln tan(t / 2) turns dt / sin t into ds.
  const double t0 = std::asin(2.0 * spacing / interval);
  const double s0 = std::log(std::tan(0.5 * t0));
  auto integrand = [&](double s) {
    const double t = 2.0 * std::atan(std::exp(s));
    const double r = 0.5 * interval * std::sin(t);
    const double u = std::log(spacing / r);
    const double c = std::cos(t);
    const double sn = std::sin(t);
    return std::sqrt(guu_of_u(std::min(u, 0.0)) * c * c + sn * sn);
  };
  const double h = -2.0 * s0 / (points - 1);
  double total = integrand(s0) + integrand(-s0);
  for (int i = 1; i < points - 1; ++i) total += (i % 2 ? 4.0 : 2.0) * integrand(s0 + i * h);
  return total * h / 3.0;
}

std::vector<CmeraProfileRow> cmera_profile(const CmeraParams& params, int points) {
  const AngleProfile profile = sample_angle_profile(params, points);
  const std::vector<double> g = g_from_phi_numeric(profile, params.cutoff);
  std::vector<CmeraProfileRow> rows;
  for (std::size_t i = 0; i < g.size(); ++i) {
    rows.push_back({profile.u[i], profile.phi[i], g[i], metric_guu(profile.u[i], params.z, params.mass, params.cutoff)});
  }
  return rows;
}

}  // namespace lifshitz
