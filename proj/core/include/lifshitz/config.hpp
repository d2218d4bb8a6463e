#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lifshitz/lattice.hpp"

namespace lifshitz {

enum class Command { ee, sweep, fit, cmera, oracle_check };
enum class OutputFormat { csv, json, svg };
enum class Regime { low, high };

std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::ee;
  LatticeSpec lattice{100, 1.0, 1, 0.0, 0.0, ZeroModeConvention::positive_limit};
  int subsystem_size = 10;  // default min(10, N / 2)
  ThermalParams beta = ThermalParams::ground_state();

  // Sweep/fit grids; empty means "use the scalar value" (or the standard
  // fit grid for betas under `fit`).
  std::vector<int> z_values;
  std::vector<double> betas;
  std::vector<int> subsystem_sizes;

  Regime regime = Regime::low;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: stdout
  std::string input_path;   // fit: read a sweep table instead of computing one
  int jobs = 1;

  // Set instead of a usable config when --help was requested.
  std::optional<std::string> help;
};

// Parses the arguments after the program name. A `--config FILE` holds
// `key = value` lines using the long flag names; flags given on the command
// line override the file and unknown keys are rejected. Throws
// Error(usage_error) with a one-line message.
RunConfig parse_config(std::span<const std::string> args);
RunConfig parse_config(int argc, const char* const* argv);

// "inf" or a positive finite number; throws Error(usage_error).
double parse_beta(std::string_view text);

}  // namespace lifshitz
