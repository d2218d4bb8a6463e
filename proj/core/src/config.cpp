#include "lifshitz/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <algorithm>
#include <map>

#include <CLI11.hpp>

#include "lifshitz/error.hpp"

namespace lifshitz {

namespace {

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::usage_error, what); }

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> clean_list(const std::vector<std::string>& raw, std::string_view flag) {
  std::vector<std::string> items;
  for (const auto& entry : raw) {
    std::string item = trim(entry);
    if (item.empty()) usage(std::string(flag) + " has an empty list entry");
    items.push_back(std::move(item));
  }
  return items;
}

int parse_int(std::string_view text, std::string_view flag) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    usage(std::string(flag) + " expects an integer, got '" + std::string(text) + "'");
  }
  return value;
}

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> commands{{"ee", Command::ee},
                                                       {"sweep", Command::sweep},
                                                       {"fit", Command::fit},
                                                       {"cmera", Command::cmera},
                                                       {"oracle-check", Command::oracle_check}};
  const auto it = commands.find(name);
  if (it == commands.end()) usage("unknown command '" + name + "' (expected ee, sweep, fit, cmera or oracle-check)");
  return it->second;
}

std::string first_line(const std::string& text) {
  const auto end = text.find('\n');
  return end == std::string::npos ? text : text.substr(0, end);
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::ee: return "ee";
    case Command::sweep: return "sweep";
    case Command::fit: return "fit";
    case Command::cmera: return "cmera";
    case Command::oracle_check: return "oracle-check";
  }
  return "unknown";
}

double parse_beta(std::string_view text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !(value > 0.0) || !std::isfinite(value)) {
    usage("beta must be a positive number or 'inf', got '" + std::string(text) + "'");
  }
  return value;
}

RunConfig parse_config(std::span<const std::string> args) {
  CLI::App app{"Entanglement entropy of Lifshitz fermions on a lattice", "lifshitz-ee"};
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string command;
  int n = 100;
  int na = 10;
  int z = 1;
  double mass = 0.0;
  std::string beta = "inf";
  double temperature = 0.0;
  double eps = 1.0;
  double theta = 0.0;
  std::vector<std::string> zs;
  std::vector<std::string> betas;
  std::vector<std::string> nas;
  std::string regime = "low";
  std::string format = "csv";
  std::string out;
  std::string input;
  int jobs = 1;
  std::string zero_mode = "limit";

  app.add_option("command", command, "ee | sweep | fit | cmera | oracle-check")->required();
  app.add_option("--n", n, "number of lattice sites N");
  auto* na_opt = app.add_option("--na", na, "subsystem size N_A (contiguous sites, default min(10, N/2))");
  app.add_option("--z", z, "Lifshitz exponent");
  app.add_option("--mass", mass, "mass m >= 0");
  auto* beta_opt = app.add_option("--beta", beta, "inverse temperature, positive or 'inf'");
  auto* temp_opt = app.add_option("--temp", temperature, "temperature T > 0 (beta = 1/T)");
  beta_opt->excludes(temp_opt);
  app.add_option("--eps", eps, "lattice spacing");
  app.add_option("--theta", theta, "boundary twist in [0, 1)");
  app.add_option("--zs", zs, "comma-separated exponents for sweep/fit")->delimiter(',');
  app.add_option("--betas", betas, "comma-separated inverse temperatures for sweep/fit")->delimiter(',');
  app.add_option("--nas", nas, "comma-separated subsystem sizes for sweep/fit")->delimiter(',');
  app.add_option("--regime", regime, "fit regime")->check(CLI::IsMember({"low", "high"}));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--input", input, "sweep table (.csv or .json) for fit");
  app.add_option("--jobs", jobs, "worker threads for sweep (0 = all cores)");
  app.add_option("--zero-mode", zero_mode, "ground-state occupation of exact zero modes")
      ->check(CLI::IsMember({"limit", "half"}));
  app.set_config("--config", "", "file of 'key = value' lines");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    RunConfig config;
    config.help = app.help();
    return config;
  } catch (const CLI::ParseError& e) {
    usage(first_line(e.what()));
  }

  RunConfig config;
  config.command = parse_command(command);
  config.lattice.n_sites = n;
  config.lattice.spacing = eps;
  config.lattice.z = z;
  config.lattice.mass = mass;
  config.lattice.boundary_phase = theta;
  config.lattice.zero_mode = zero_mode == "half" ? ZeroModeConvention::half_filled : ZeroModeConvention::positive_limit;
  try {
    config.lattice.validate();
  } catch (const Error& e) {
    usage(e.what());
  }
  if (na_opt->count() == 0) na = std::min(10, std::max(1, n / 2));
  if (na < 1 || na > n) usage("--na must lie in [1, --n]");
  config.subsystem_size = na;

  if (temp_opt->count() > 0) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) usage("--temp must be positive");
    config.beta = ThermalParams::at_beta(1.0 / temperature);
  } else {
    const double b = parse_beta(beta);
    config.beta = std::isinf(b) ? ThermalParams::ground_state() : ThermalParams::at_beta(b);
  }

  if (!zs.empty()) {
    for (const auto& item : clean_list(zs, "--zs")) {
      const int value = parse_int(item, "--zs");
      if (value < 1) usage("--zs entries must be >= 1");
      config.z_values.push_back(value);
    }
  }
  if (!betas.empty()) {
    for (const auto& item : clean_list(betas, "--betas")) config.betas.push_back(parse_beta(item));
  }
  if (!nas.empty()) {
    for (const auto& item : clean_list(nas, "--nas")) {
      const int value = parse_int(item, "--nas");
      if (value < 1 || value > n) usage("--nas entries must lie in [1, --n]");
      config.subsystem_sizes.push_back(value);
    }
  }

  config.regime = regime == "high" ? Regime::high : Regime::low;
  config.format = format == "json" ? OutputFormat::json : (format == "svg" ? OutputFormat::svg : OutputFormat::csv);
  config.output_path = out;
  config.input_path = input;
  if (jobs < 0) usage("--jobs must be >= 0");
  config.jobs = jobs;

  if (!input.empty() && config.command != Command::fit) usage("--input is only used by fit");
  if (config.command == Command::oracle_check && n > 6) usage("oracle-check needs --n <= 6");
  return config;
}

RunConfig parse_config(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_config(args);
}

}  // namespace lifshitz
