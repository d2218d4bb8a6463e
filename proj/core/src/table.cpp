#include "lifshitz/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lifshitz/error.hpp"

namespace lifshitz {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, "malformed table: " + what);
}

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

std::string json_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    const std::string text = format_number(*d);
    return std::isfinite(*d) ? text : nlohmann::json(text).dump();
  }
  if (const auto* s = std::get_if<std::string>(&cell)) return nlohmann::json(*s).dump();
  return format_cell(cell);
}

double parse_double(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) malformed("'" + std::string(text) + "' is not a number");
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) malformed("'" + std::string(text) + "' is not an integer");
  return value;
}

SweepRow row_from_fields(const std::array<std::string, 7>& f) {
  return {parse_int(f[0]),    parse_double(f[1]), parse_int(f[2]),   parse_int(f[3]),
          parse_double(f[4]), parse_double(f[5]), parse_double(f[6])};
}

SweepTable parse_csv(std::string_view text) {
  SweepTable table;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kSweepHeader) malformed("expected header '" + std::string(kSweepHeader) + "'");
      header = false;
      continue;
    }
    std::array<std::string, 7> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (count == fields.size()) malformed("too many fields in '" + std::string(line) + "'");
      fields[count++] = std::string(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != fields.size()) malformed("expected 7 fields in '" + std::string(line) + "'");
    table.rows.push_back(row_from_fields(fields));
  }
  if (header) malformed("missing header");
  return table;
}

SweepTable parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(e.what());
  }
  if (!doc.is_array()) malformed("expected a JSON array");
  static const std::array<const char*, 7> keys{"z", "beta", "n", "na", "epsilon", "mass", "entropy"};
  SweepTable table;
  for (const auto& item : doc) {
    if (!item.is_object() || item.size() != keys.size()) malformed("each row must be an object with 7 keys");
    std::array<std::string, 7> fields;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!item.contains(keys[i])) malformed(std::string("row lacks key '") + keys[i] + "'");
      const auto& v = item.at(keys[i]);
      if (v.is_string()) {
        fields[i] = v.get<std::string>();
      } else if (v.is_number()) {
        fields[i] = v.is_number_integer() ? std::to_string(v.get<long long>()) : format_number(v.get<double>());
      } else {
        malformed(std::string("key '") + keys[i] + "' is neither number nor string");
      }
    }
    table.rows.push_back(row_from_fields(fields));
  }
  return table;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::general, 12);
  return std::string(buffer.data(), result.ptr);
}

std::string emit_text_table(const TextTable& table, TableFormat format) {
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw Error(ErrorCode::invalid_argument, "row width differs from header");
  }
  std::ostringstream out;
  if (format == TableFormat::csv) {
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
      out << '\n';
    }
    return out.str();
  }
  if (table.rows.empty()) return "[]\n";
  out << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << "  {";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      out << (i ? ", " : "") << nlohmann::json(table.header[i]).dump() << ": " << json_cell(table.rows[r][i]);
    }
    out << (r + 1 < table.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
  return out.str();
}

TextTable to_text_table(const SweepTable& table) {
  TextTable text;
  text.header = {"z", "beta", "n", "na", "epsilon", "mass", "entropy"};
  for (const auto& r : table.rows) {
    text.rows.push_back({static_cast<long long>(r.z), r.beta, static_cast<long long>(r.n_sites),
                         static_cast<long long>(r.subsystem_size), r.spacing, r.mass, r.entropy});
  }
  return text;
}

std::string emit_table(const SweepTable& table, TableFormat format) {
  return emit_text_table(to_text_table(table), format);
}

SweepTable parse_table(std::string_view text, TableFormat format) {
  return format == TableFormat::csv ? parse_csv(text) : parse_json(text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io_error, "failed reading '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::io_error, "failed writing '" + path.string() + "'");
}

}  // namespace lifshitz
