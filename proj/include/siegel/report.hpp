#pragma once

// Report serialization: JSON with every floating value printed to 17
// significant digits, and comma-separated series files.

#include "siegel/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace siegel::io {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep integral-valued doubles recognisable as floating point.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void dump(const Json& j, std::ostringstream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        dump(it.value(), os, indent, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump(j[i], os, indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        dump(j[i], os, indent, depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace detail

/// JSON text with floats at 17 significant digits; non-finite values become
/// the strings "inf", "-inf", "nan".
inline std::string dump17(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::dump(j, os, indent, 0);
  os << "\n";
  return os.str();
}

struct Series {
  std::string file;  // e.g. "density_vs_R.csv"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // Optional trailing rows with a text label in the first column.
  std::vector<std::pair<std::string, std::vector<double>>> summary;
};

/// Writes one CSV per non-empty series; returns the files written. Empty
/// series are skipped with a note on stderr.
inline std::vector<std::string> emit_plot_data(const std::vector<Series>& series, const std::filesystem::path& dir) {
  std::vector<std::string> written;
  for (const auto& s : series) {
    if (s.rows.empty()) {
      std::cerr << "note: series " << s.file << " is empty; no file written\n";
      continue;
    }
    std::ofstream out(dir / s.file);
    if (!out) throw std::runtime_error("cannot write " + (dir / s.file).string());
    for (std::size_t i = 0; i < s.header.size(); ++i) out << (i ? "," : "") << s.header[i];
    out << "\n";
    auto cell = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    for (const auto& r : s.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
      out << "\n";
    }
    for (const auto& [label, r] : s.summary) {
      out << label;
      for (double v : r) out << "," << cell(v);
      out << "\n";
    }
    written.push_back(s.file);
  }
  return written;
}

}  // namespace siegel::io
