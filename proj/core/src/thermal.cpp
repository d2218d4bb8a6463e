#include "lifshitz/thermal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "lifshitz/entropy.hpp"
#include "lifshitz/error.hpp"

namespace lifshitz {

namespace {

auto sort_key(const SweepRow& r) {
  return std::tie(r.z, r.beta, r.subsystem_size, r.n_sites, r.spacing, r.mass);
}

double fit_variable(const SweepRow& r) {
  return r.subsystem_size * r.spacing * std::pow(r.beta, -1.0 / r.z);
}

// Finite-beta rows of exponent z; all must describe the same chain and interval.
std::vector<SweepRow> rows_for(const SweepTable& table, int z) {
  std::vector<SweepRow> rows;
  for (const auto& r : table.rows) {
    if (r.z == z && std::isfinite(r.beta)) rows.push_back(r);
  }
  for (const auto& r : rows) {
    if (r.n_sites != rows.front().n_sites || r.subsystem_size != rows.front().subsystem_size ||
        r.spacing != rows.front().spacing || r.mass != rows.front().mass) {
      throw Error(ErrorCode::invalid_argument,
                  "rows for z=" + std::to_string(z) + " mix different N, N_A, eps or mass");
    }
  }
  return rows;
}

void require_rows(std::size_t have, std::string_view what) {
  if (have < kMinFitRows) {
    throw Error(ErrorCode::insufficient_data, std::string(what) + " fit needs at least " +
                                                   std::to_string(kMinFitRows) + " rows in its window, got " +
                                                   std::to_string(have));
  }
}

}  // namespace

CftKind parse_cft_kind(std::string_view name) {
  if (name == "finite_size") return CftKind::finite_size;
  if (name == "thermal") return CftKind::thermal;
  if (name == "low_T_expansion") return CftKind::low_temperature;
  if (name == "high_T_expansion") return CftKind::high_temperature;
  throw Error(ErrorCode::invalid_kind, "unknown reference kind '" + std::string(name) + "'");
}

std::string_view to_string(CftKind kind) {
  switch (kind) {
    case CftKind::finite_size: return "finite_size";
    case CftKind::thermal: return "thermal";
    case CftKind::low_temperature: return "low_T_expansion";
    case CftKind::high_temperature: return "high_T_expansion";
  }
  return "unknown";
}

double cft_reference(CftKind kind, const CftParams& p) {
  using std::numbers::pi;
  const double prefactor = p.central_charge / 3.0;
  const double l = p.interval;
  switch (kind) {
    case CftKind::finite_size:
      return prefactor * std::log(p.length / (pi * p.spacing) * std::sin(pi * l / p.length));
    case CftKind::thermal:
      return prefactor * std::log(p.beta / (pi * p.spacing) * std::sinh(pi * l / p.beta));
    case CftKind::low_temperature:
      return prefactor * (std::log(l / p.spacing) + pi * pi * l * l / (6.0 * p.beta * p.beta));
    case CftKind::high_temperature:
      return prefactor * (pi * l / p.beta - std::log(l / p.beta) + std::log(l / (2.0 * pi * p.spacing)));
  }
  throw Error(ErrorCode::invalid_kind, "unknown reference kind");
}

double cft_reference(std::string_view kind, const CftParams& params) {
  return cft_reference(parse_cft_kind(kind), params);
}

void SweepTable::sort() {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return sort_key(a) < sort_key(b); });
}

void SweepTable::check_unique() const {
  std::vector<SweepRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) { return sort_key(a) < sort_key(b); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sort_key(sorted[i - 1]) == sort_key(sorted[i])) {
      throw Error(ErrorCode::invalid_argument, "table repeats a parameter tuple");
    }
  }
}

SweepTable sweep_entropy(const SweepGrid& grid, const LatticeSpec& base, int jobs) {
  auto unique = [](auto values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
  };
  const std::vector<int> zs = unique(grid.z_values);
  const std::vector<double> betas = unique(grid.betas);
  const std::vector<int> sizes = unique(grid.subsystem_sizes);

  struct Task {
    int z;
    ThermalParams beta;
    int size;
  };
  std::vector<Task> tasks;
  for (int z : zs) {
    LatticeSpec probe = base;
    probe.z = z;
    probe.validate();
    for (double beta : betas) {
      const ThermalParams thermal = std::isinf(beta) && beta > 0 ? ThermalParams::ground_state()
                                                                 : ThermalParams::at_beta(beta);
      for (int size : sizes) {
        if (size < 1 || size > base.n_sites) {
          throw Error(ErrorCode::invalid_argument, "subsystem size must lie in [1, N], got " + std::to_string(size));
        }
        tasks.push_back({z, thermal, size});
      }
    }
  }

  SweepTable table;
  table.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        LatticeSpec spec = base;
        spec.z = tasks[i].z;
        const std::vector<int> sites = interval(tasks[i].size);
        const EntropyPoint point = entropy_of(spec, tasks[i].beta, sites);
        table.rows[i] = {spec.z, tasks[i].beta.beta(), spec.n_sites, tasks[i].size, spec.spacing, spec.mass,
                         point.entropy};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  unsigned threads = jobs > 0 ? static_cast<unsigned>(jobs) : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  table.sort();
  return table;
}

double FitResult::coefficient(std::string_view name) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == name) return coefficients[i];
  }
  throw Error(ErrorCode::invalid_argument, "fit has no basis function '" + std::string(name) + "'");
}

double FitResult::std_error(std::string_view name) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == name) return std_errors[i];
  }
  throw Error(ErrorCode::invalid_argument, "fit has no basis function '" + std::string(name) + "'");
}

FitResult fit_linear(const Eigen::MatrixXd& design, const Eigen::VectorXd& values, std::vector<std::string> basis) {
  const Eigen::Index rows = design.rows();
  const Eigen::Index cols = design.cols();
  if (static_cast<Eigen::Index>(basis.size()) != cols || values.size() != rows) {
    throw Error(ErrorCode::invalid_argument, "design, values and basis sizes disagree");
  }
  if (rows < cols || cols == 0) {
    throw Error(ErrorCode::insufficient_data, "need at least as many rows as basis functions");
  }
  if (!design.allFinite() || !values.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "fit data contains non-finite values");
  }

  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (scale(j) == 0.0) throw Error(ErrorCode::ill_conditioned, "basis column '" + basis[j] + "' is identically zero");
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd normal = scaled.transpose() * scaled;
  const Eigen::VectorXd spectrum = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(normal, Eigen::EigenvaluesOnly).eigenvalues();
  const double condition = spectrum.minCoeff() > 0.0 ? spectrum.maxCoeff() / spectrum.minCoeff()
                                                     : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxNormalCondition)) {
    throw Error(ErrorCode::ill_conditioned, "normal-equation condition number " + std::to_string(condition));
  }

  const Eigen::LDLT<Eigen::MatrixXd> solver(normal);
  const Eigen::VectorXd scaled_coefficients = solver.solve(scaled.transpose() * values);
  const Eigen::VectorXd coefficients = scaled_coefficients.cwiseQuotient(scale);
  const Eigen::VectorXd residual = values - design * coefficients;
  const double rss = residual.squaredNorm();

  FitResult fit;
  fit.basis = std::move(basis);
  fit.coefficients.assign(coefficients.data(), coefficients.data() + cols);
  fit.residual_rms = std::sqrt(rss / static_cast<double>(rows));
  fit.rows_used = static_cast<std::size_t>(rows);
  const double variance = rows > cols ? rss / static_cast<double>(rows - cols) : 0.0;
  const Eigen::MatrixXd inverse = solver.solve(Eigen::MatrixXd::Identity(cols, cols));
  fit.std_errors.resize(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    fit.std_errors[j] = std::sqrt(variance * std::max(inverse(j, j), 0.0)) / scale(j);
  }
  return fit;
}

FitResult fit_low_temperature(const SweepTable& table, int z, int degree) {
  if (degree < 1) throw Error(ErrorCode::invalid_argument, "degree must be >= 1");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rows_for(table, z)) {
    const double x = fit_variable(r);
    if (x > 0.0 && x < kLowTemperatureWindow) {
      xs.push_back(x);
      ys.push_back(r.entropy);
    }
  }
  require_rows(xs.size(), "low-temperature");

  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(n, degree + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double power = 1.0;
    for (int j = 0; j <= degree; ++j) {
      design(i, j) = power;
      power *= xs[i];
    }
  }
  std::vector<std::string> names{"1", "x"};
  for (int j = 2; j <= degree; ++j) names.push_back("x^" + std::to_string(j));
  names.resize(degree + 1);

  FitResult fit = fit_linear(design, Eigen::Map<const Eigen::VectorXd>(ys.data(), n), std::move(names));
  fit.domain_min = *std::min_element(xs.begin(), xs.end());
  fit.domain_max = *std::max_element(xs.begin(), xs.end());
  return fit;
}

FitResult fit_high_temperature(const SweepTable& table, int z) {
  const std::vector<SweepRow> rows = rows_for(table, z);
  if (rows.empty()) require_rows(0, "high-temperature");

  const double saturation = kSaturationFraction * 2.0 * rows.front().subsystem_size * std::numbers::ln2;
  const double upper = rows.front().subsystem_size / kHighTemperatureWindow;
  std::vector<SweepRow> admitted;
  for (const auto& r : rows) {
    const double x = fit_variable(r);
    if (x > kHighTemperatureWindow && x < upper && r.entropy < saturation) admitted.push_back(r);
  }
  if (admitted.empty()) {
    throw Error(ErrorCode::regime_unreachable,
                "no row of z=" + std::to_string(z) + " lies in the high-temperature window below saturation");
  }
  const auto [lo, hi] = std::minmax_element(admitted.begin(), admitted.end(),
                                            [](const SweepRow& a, const SweepRow& b) { return a.beta < b.beta; });
  const double decades = std::log10(hi->beta / lo->beta);
  if (decades < kHighTemperatureMinDecades) {
    throw Error(ErrorCode::regime_unreachable, "high-temperature window for z=" + std::to_string(z) + " spans only " +
                                                   std::to_string(decades) + " decades in beta");
  }
  require_rows(admitted.size(), "high-temperature");

  const auto n = static_cast<Eigen::Index>(admitted.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd values(n);
  std::vector<double> xs;
  for (Eigen::Index i = 0; i < n; ++i) {
    const SweepRow& r = admitted[i];
    const double x = fit_variable(r);
    xs.push_back(x);
    design(i, 0) = 1.0;
    design(i, 1) = x;
    design(i, 2) = z * std::log(r.spacing) - std::log(r.beta);
    values(i) = r.entropy;
  }
  FitResult fit = fit_linear(design, values, {"1", "x", "log(eps^z/beta)"});
  fit.domain_min = *std::min_element(xs.begin(), xs.end());
  fit.domain_max = *std::max_element(xs.begin(), xs.end());
  return fit;
}

RegimeScales regime_scales(const LatticeSpec& spec, int subsystem_size) {
  spec.validate();
  if (subsystem_size < 1) throw Error(ErrorCode::invalid_argument, "subsystem size must be >= 1");
  return {std::pow(spec.spacing * subsystem_size, -spec.z), 2.0 * subsystem_size * std::numbers::ln2};
}

std::vector<double> low_temperature_betas(int z, double interval) {
  constexpr int kPoints = 24;
  constexpr double kFirst = 0.02;
  constexpr double kLast = 0.29;
  std::vector<double> betas;
  for (int i = 0; i < kPoints; ++i) {
    const double x = kFirst + (kLast - kFirst) * i / (kPoints - 1);
    betas.push_back(std::pow(interval / x, z));
  }
  std::sort(betas.begin(), betas.end());
  return betas;
}

std::vector<double> high_temperature_betas(int z, double interval, double spacing) {
  constexpr int kPoints = 24;
  const double lo = kHighTemperatureWindow;
  const double hi = interval / (kHighTemperatureWindow * spacing);
  std::vector<double> betas;
  if (!(hi > lo)) return betas;
  for (int i = 1; i <= kPoints; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / (kPoints + 1));
    betas.push_back(std::pow(interval / x, z));
  }
  std::sort(betas.begin(), betas.end());
  return betas;
}

}  // namespace lifshitz
