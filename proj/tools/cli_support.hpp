#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace forksettle::cli {

/// "0.1", "0.05,0.1,0.2", "start:step:stop" or "a..b" (step a). Values are
/// rounded to 12 decimals so 0.05:0.05:0.40 prints cleanly. Throws BadGrid.
std::vector<double> parse_real_grid(const std::string& text);
/// Same syntax; every value must be a non-negative integer.
std::vector<std::size_t> parse_count_grid(const std::string& text);

enum class Format { Csv, Json, Text };
Format parse_format(const std::string& name);

using Cell = std::variant<double, std::int64_t, std::string, bool>;

/// Tabular command output plus the echo of how it was produced.
struct Output {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Extra top-level JSON members (e.g. fits); text mode prints them after
  /// the table unless extra_in_text is off.
  nlohmann::json extra = nlohmann::json::object();
  bool extra_in_text = true;
  /// Free-form text printed before the table in text mode only.
  std::string preamble;
};

/// Scientific notation with `digits` significant digits.
std::string format_real(double x, int digits);

void write(std::ostream& out, const Output& o, Format format, int digits);

}  // namespace forksettle::cli
