#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace photocool {

// Locale-independent numeric formatting: dot decimal separator always (no
// locale is ever installed), round-trippable at 12 significant digits.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Tabular output with `# key=value` metadata lines, a header row, and dot-
// decimal data rows; written with \n line endings, plain UTF-8.
struct Csv {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void meta(const std::string& key, const std::string& value) { metadata.emplace_back(key, value); }
  void meta(const std::string& key, double value) { metadata.emplace_back(key, format_double(value)); }

  void add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    rows.push_back(std::move(row));
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [k, v] : metadata) out += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out += columns[i];
      out += (i + 1 < columns.size()) ? "," : "\n";
    }
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out += row[i];
        out += (i + 1 < row.size()) ? "," : "\n";
      }
    }
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << to_string();
  }
};

}  // namespace photocool
