#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "lifshitz/config.hpp"

namespace lifshitz::cli {

// Runs a parsed configuration, writing the result to config.output_path or
// `out`. Throws lifshitz::Error.
void run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full entry point: parse, run, report. Returns the process exit status
// (0 success, 2 usage error, 1 anything else) after printing at most one
// diagnostic line to `err`.
int main(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lifshitz::cli
