#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <set>

#include "lifshitz/cmera.hpp"
#include "lifshitz/entropy.hpp"
#include "lifshitz/error.hpp"
#include "lifshitz/oracle.hpp"
#include "lifshitz/plot.hpp"
#include "lifshitz/table.hpp"
#include "lifshitz/thermal.hpp"

namespace lifshitz::cli {

namespace {

constexpr int kCmeraPoints = 501;
constexpr double kCmeraUMin = -5.0;
constexpr double kOracleEntropyTolerance = 1e-8;
constexpr double kOracleCorrelatorTolerance = 1e-10;

TableFormat table_format(const RunConfig& config) {
  if (config.format == OutputFormat::svg) throw Error(ErrorCode::usage_error, "svg output is not available here");
  return config.format == OutputFormat::json ? TableFormat::json : TableFormat::csv;
}

void deliver(const RunConfig& config, const std::string& bytes, std::ostream& out) {
  if (config.output_path.empty()) {
    out << bytes;
    out.flush();
  } else {
    write_file(config.output_path, bytes);
  }
}

std::string beta_label(double beta) { return "beta=" + format_number(beta); }

std::string run_ee(const RunConfig& config) {
  const LatticeSpec& spec = config.lattice;
  if (config.format != OutputFormat::svg) {
    const EntropyPoint point = entropy_of(spec, config.beta, interval(config.subsystem_size));
    SweepTable table;
    table.rows.push_back({spec.z, config.beta.beta(), spec.n_sites, config.subsystem_size, spec.spacing, spec.mass,
                          point.entropy});
    return emit_table(table, table_format(config));
  }

  // S(l) for l = 1..N_A against the c = 2 finite-size law, offset matched on average.
  PlotSeries lattice{{}, {}, "lattice", false, true};
  PlotSeries reference{{}, {}, "area law, c=2", true, false};
  double offset = 0.0;
  for (int l = 1; l <= config.subsystem_size; ++l) {
    const double s = entropy_of(spec, config.beta, interval(l)).entropy;
    const double r = cft_reference(CftKind::finite_size, {2.0, l * spec.spacing, spec.spacing, 1.0, spec.length()});
    lattice.x.push_back(l);
    lattice.y.push_back(s);
    reference.x.push_back(l);
    reference.y.push_back(r);
    offset += (s - r) / config.subsystem_size;
  }
  for (double& r : reference.y) r += offset;
  const std::vector<PlotSeries> series{lattice, reference};
  return emit_plot(series, {"Entanglement entropy, z=" + std::to_string(spec.z), "N_A", "S", false, false});
}

SweepGrid grid_from(const RunConfig& config) {
  SweepGrid grid;
  grid.z_values = config.z_values.empty() ? std::vector<int>{config.lattice.z} : config.z_values;
  grid.betas = config.betas.empty() ? std::vector<double>{config.beta.beta()} : config.betas;
  grid.subsystem_sizes =
      config.subsystem_sizes.empty() ? std::vector<int>{config.subsystem_size} : config.subsystem_sizes;
  return grid;
}

std::string plot_sweep(const SweepTable& table) {
  std::set<int> zs;
  std::set<double> betas;
  std::set<int> sizes;
  for (const auto& r : table.rows) {
    zs.insert(r.z);
    betas.insert(r.beta);
    sizes.insert(r.subsystem_size);
  }
  std::vector<PlotSeries> series;
  PlotAxes axes{"Entanglement entropy", "", "S", false, false};
  if (zs.size() > 1) {
    axes.x_label = "z";
    std::map<std::pair<double, int>, PlotSeries> by_curve;
    for (const auto& r : table.rows) {
      auto& s = by_curve[{r.beta, r.subsystem_size}];
      s.label = beta_label(r.beta) + (sizes.size() > 1 ? ", N_A=" + std::to_string(r.subsystem_size) : "");
      s.x.push_back(r.z);
      s.y.push_back(r.entropy);
    }
    for (auto& [key, s] : by_curve) series.push_back(std::move(s));
    const int largest = *sizes.rbegin();
    const double s_max = 2.0 * largest * std::numbers::ln2;
    series.push_back({{static_cast<double>(*zs.begin()), static_cast<double>(*zs.rbegin())}, {s_max, s_max},
                      "S_max", true, false});
  } else if (betas.size() > 1) {
    axes.x_label = "beta";
    axes.log_x = true;
    std::map<int, PlotSeries> by_size;
    for (const auto& r : table.rows) {
      if (std::isinf(r.beta)) continue;
      auto& s = by_size[r.subsystem_size];
      s.label = "N_A=" + std::to_string(r.subsystem_size);
      s.x.push_back(r.beta);
      s.y.push_back(r.entropy);
    }
    for (auto& [key, s] : by_size) series.push_back(std::move(s));
  } else {
    axes.x_label = "N_A";
    PlotSeries s{{}, {}, beta_label(*betas.begin()), false, true};
    for (const auto& r : table.rows) {
      s.x.push_back(r.subsystem_size);
      s.y.push_back(r.entropy);
    }
    series.push_back(std::move(s));
  }
  return emit_plot(series, axes);
}

std::string run_sweep(const RunConfig& config) {
  const SweepTable table = sweep_entropy(grid_from(config), config.lattice, config.jobs);
  if (config.format == OutputFormat::svg) return plot_sweep(table);
  return emit_table(table, table_format(config));
}

SweepTable fit_input(const RunConfig& config) {
  if (!config.input_path.empty()) {
    const bool json = config.input_path.size() >= 5 &&
                      config.input_path.compare(config.input_path.size() - 5, 5, ".json") == 0;
    return parse_table(read_file(config.input_path), json ? TableFormat::json : TableFormat::csv);
  }
  SweepGrid base = grid_from(config);
  SweepTable merged;
  for (int z : base.z_values) {
    for (int na : base.subsystem_sizes) {
      SweepGrid grid{{z}, config.betas, {na}};
      if (grid.betas.empty()) {
        const double l = na * config.lattice.spacing;
        grid.betas = config.regime == Regime::low ? low_temperature_betas(z, l)
                                                  : high_temperature_betas(z, l, config.lattice.spacing);
        if (grid.betas.empty()) {
          throw Error(ErrorCode::regime_unreachable,
                      "N_A=" + std::to_string(na) + " leaves no room for the high-temperature window");
        }
      }
      const SweepTable part = sweep_entropy(grid, config.lattice, config.jobs);
      merged.rows.insert(merged.rows.end(), part.rows.begin(), part.rows.end());
    }
  }
  merged.sort();
  return merged;
}

std::string run_fit(const RunConfig& config, std::ostream& err) {
  const SweepTable table = fit_input(config);
  std::set<int> zs;
  for (const auto& r : table.rows) zs.insert(r.z);
  if (zs.empty()) throw Error(ErrorCode::insufficient_data, "no rows to fit");

  const std::string regime = config.regime == Regime::low ? "low" : "high";
  std::vector<std::pair<int, FitResult>> fits;
  for (int z : zs) {
    try {
      fits.emplace_back(z, config.regime == Regime::low ? fit_low_temperature(table, z)
                                                        : fit_high_temperature(table, z));
    } catch (const Error& e) {
      if (zs.size() == 1) throw;
      err << "lifshitz-ee: skipping z=" << z << ": " << e.what() << '\n';
    }
  }
  if (fits.empty()) throw Error(ErrorCode::insufficient_data, "no exponent could be fitted");

  if (config.format == OutputFormat::svg) {
    std::vector<PlotSeries> series;
    for (std::size_t j = 0; j < fits.front().second.basis.size(); ++j) {
      PlotSeries s{{}, {}, "coefficient of " + fits.front().second.basis[j], false, true};
      for (const auto& [z, fit] : fits) {
        s.x.push_back(z);
        s.y.push_back(fit.coefficients[j]);
      }
      series.push_back(std::move(s));
    }
    return emit_plot(series, {"Fit coefficients (" + regime + " temperature)", "z", "coefficient", false, false});
  }

  TextTable out;
  out.header = {"z", "regime", "term", "coefficient", "std_error", "residual_rms", "rows", "x_min", "x_max"};
  for (const auto& [z, fit] : fits) {
    for (std::size_t j = 0; j < fit.basis.size(); ++j) {
      out.rows.push_back({static_cast<long long>(z), regime, fit.basis[j], fit.coefficients[j], fit.std_errors[j],
                          fit.residual_rms, static_cast<long long>(fit.rows_used), fit.domain_min, fit.domain_max});
    }
  }
  return emit_text_table(out, table_format(config));
}

std::string run_cmera(const RunConfig& config) {
  const CmeraParams params{config.lattice.z, config.lattice.mass, 1.0 / config.lattice.spacing, kCmeraUMin};
  const std::vector<CmeraProfileRow> rows = cmera_profile(params, kCmeraPoints);
  if (config.format == OutputFormat::svg) {
    PlotSeries g{{}, {}, "g(u)", false, false};
    PlotSeries guu{{}, {}, "g_uu(u)", true, false};
    for (const auto& r : rows) {
      g.x.push_back(r.u);
      g.y.push_back(r.g);
      guu.x.push_back(r.u);
      guu.y.push_back(r.guu);
    }
    const std::vector<PlotSeries> series{g, guu};
    return emit_plot(series, {"cMERA profile, z=" + std::to_string(params.z), "u", "", false, false});
  }
  TextTable out;
  out.header = {"u", "phi", "g", "guu"};
  for (const auto& r : rows) out.rows.push_back({r.u, r.phi, r.g, r.guu});
  return emit_text_table(out, table_format(config));
}

void run_oracle_check(const RunConfig& config, std::ostream& out) {
  const LatticeSpec& spec = config.lattice;
  const TableFormat format = table_format(config);
  const FockState state = many_body_state(spec, config.beta);
  std::vector<int> all_sites(spec.n_sites);
  for (int i = 0; i < spec.n_sites; ++i) all_sites[i] = i;
  const Eigen::MatrixXcd lattice = build_correlation_matrix(spec, config.beta, all_sites).entries;
  const double correlator_diff = (oracle_correlators(state) - lattice).cwiseAbs().maxCoeff();

  std::vector<int> sizes = config.subsystem_sizes.empty() ? std::vector<int>{config.subsystem_size}
                                                          : config.subsystem_sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  TextTable table;
  table.header = {"n", "na", "z", "mass", "beta", "entropy_correlation", "entropy_oracle", "entropy_diff",
                "correlator_diff"};
  double worst = 0.0;
  for (int na : sizes) {
    const std::vector<int> sites = interval(na);
    const double s_corr = entropy_of(spec, config.beta, sites).entropy;
    const double s_oracle = reduced_entropy(state, sites);
    worst = std::max(worst, std::abs(s_corr - s_oracle));
    table.rows.push_back({static_cast<long long>(spec.n_sites), static_cast<long long>(na),
                        static_cast<long long>(spec.z), spec.mass, config.beta.beta(), s_corr, s_oracle,
                        std::abs(s_corr - s_oracle), correlator_diff});
  }
  deliver(config, emit_text_table(table, format), out);
  if (worst > kOracleEntropyTolerance || correlator_diff > kOracleCorrelatorTolerance) {
    throw Error(ErrorCode::invalid_argument, "oracle mismatch: entropy diff " + format_number(worst) +
                                                 ", correlator diff " + format_number(correlator_diff));
  }
}

std::string single_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

void run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string bytes;
  switch (config.command) {
    case Command::ee: bytes = run_ee(config); break;
    case Command::sweep: bytes = run_sweep(config); break;
    case Command::fit: bytes = run_fit(config, err); break;
    case Command::cmera: bytes = run_cmera(config); break;
    case Command::oracle_check: run_oracle_check(config, out); return;
  }
  deliver(config, bytes, out);
}

int main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_config(args);
    if (config.help) {
      out << *config.help;
      return 0;
    }
    run(config, out, err);
    return 0;
  } catch (const Error& e) {
    err << "lifshitz-ee: " << single_line(e.what()) << '\n';
    return e.code() == ErrorCode::usage_error ? 2 : 1;
  } catch (const std::exception& e) {
    err << "lifshitz-ee: " << single_line(e.what()) << '\n';
    return 1;
  }
}

}  // namespace lifshitz::cli
