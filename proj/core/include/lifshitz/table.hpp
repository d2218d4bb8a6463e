#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lifshitz/thermal.hpp"

namespace lifshitz {

enum class TableFormat { csv, json };

// Shortest of %.12g; infinities as "inf" / "-inf", NaN as "nan".
std::string format_number(double value);

// Heterogeneous rows for CSV/JSON output.
using Cell = std::variant<long long, double, std::string>;
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// CSV: header line then one line per row, LF endings. JSON: array of objects
// keyed by the header, doubles at 12 significant digits, non-finite doubles
// as strings. Byte-stable for identical input.
std::string emit_text_table(const TextTable& table, TableFormat format);

inline constexpr std::string_view kSweepHeader = "z,beta,n,na,epsilon,mass,entropy";

TextTable to_text_table(const SweepTable& table);
std::string emit_table(const SweepTable& table, TableFormat format);

// Inverse of emit_table. Throws Error(invalid_argument) on malformed input.
SweepTable parse_table(std::string_view text, TableFormat format);

// Throws Error(io_error).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace lifshitz
