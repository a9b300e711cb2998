#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "forksettle/errors.hpp"

#ifndef FORKSETTLE_VERSION
#define FORKSETTLE_VERSION "unknown"
#endif

namespace forksettle::cli {

namespace {

constexpr std::size_t kMaxGridPoints = 100000;

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw BadGrid("not a number: '" + s + "'");
  return v;
}

double tidy(double x) { return std::round(x * 1e12) / 1e12; }

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (true) {
    const auto at = s.find(sep, from);
    out.push_back(s.substr(from, at == std::string::npos ? std::string::npos : at - from));
    if (at == std::string::npos) break;
    from = at + sep.size();
  }
  return out;
}

std::vector<double> range(double start, double step, double stop, const std::string& text) {
  if (!(step > 0.0)) throw BadGrid("grid step must be positive in '" + text + "'");
  if (stop < start) throw BadGrid("grid stop is below its start in '" + text + "'");
  const double span = (stop - start) / step;
  if (span + 1 > static_cast<double>(kMaxGridPoints)) throw BadGrid("grid '" + text + "' is too large");
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(tidy(start + static_cast<double>(i) * step));
  return out;
}

}  // namespace

std::vector<double> parse_real_grid(const std::string& text) {
  if (text.empty()) throw BadGrid("empty grid");
  if (text.find("..") != std::string::npos) {
    const auto parts = split(text, "..");
    if (parts.size() != 2) throw BadGrid("expected a..b, got '" + text + "'");
    const double a = parse_number(parts[0]);
    return range(a, a, parse_number(parts[1]), text);
  }
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ":");
    if (parts.size() != 3) throw BadGrid("expected start:step:stop, got '" + text + "'");
    return range(parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]), text);
  }
  std::vector<double> out;
  for (const auto& p : split(text, ",")) out.push_back(parse_number(p));
  return out;
}

std::vector<std::size_t> parse_count_grid(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_real_grid(text)) {
    if (v < 0 || v != std::floor(v) || v > 1e9) throw BadGrid("grid '" + text + "' must hold non-negative integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "text") return Format::Text;
  throw BadParams("unknown format '" + name + "'");
}

std::string format_real(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", std::max(digits, 1) - 1, x);
  return buf;
}

namespace {

std::string cell_text(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d, digits);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) {
    // Round through the printed form so JSON and CSV agree.
    if (!std::isfinite(*d)) return format_real(*d, digits);
    return std::stod(format_real(*d, digits));
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

}  // namespace

void write(std::ostream& out, const Output& o, Format format, int digits) {
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < o.columns.size(); ++i) out << (i ? "," : "") << o.columns[i];
      out << '\n';
      for (const auto& row : o.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i], digits);
        out << '\n';
      }
      break;
    }
    case Format::Json: {
      nlohmann::json j;
      j["command"] = o.command;
      j["version"] = FORKSETTLE_VERSION;
      j["seed"] = o.seed;
      j["parameters"] = o.parameters;
      nlohmann::json records = nlohmann::json::array();
      for (const auto& row : o.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[o.columns[i]] = cell_json(row[i], digits);
        records.push_back(std::move(r));
      }
      j["records"] = std::move(records);
      for (const auto& [key, value] : o.extra.items()) j[key] = value;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Text: {
      if (!o.preamble.empty()) out << o.preamble;
      std::vector<std::size_t> width(o.columns.size());
      std::vector<std::vector<std::string>> cells;
      for (std::size_t i = 0; i < o.columns.size(); ++i) width[i] = o.columns[i].size();
      for (const auto& row : o.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
          line.push_back(cell_text(row[i], digits));
          width[i] = std::max(width[i], line.back().size());
        }
      }
      auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
          out << (i ? "  " : "") << line[i];
          if (i + 1 < line.size()) out << std::string(width[i] - line[i].size(), ' ');
        }
        out << '\n';
      };
      if (!o.columns.empty()) emit(o.columns);
      for (const auto& line : cells) emit(line);
      if (o.extra_in_text) {
        for (const auto& [key, value] : o.extra.items()) out << key << ": " << value.dump() << '\n';
      }
      break;
    }
  }
}

}  // namespace forksettle::cli
