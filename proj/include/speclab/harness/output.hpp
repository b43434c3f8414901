#pragma once

// CSV text, content digests and the plain-text run manifest.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "speclab/error.hpp"
#include "speclab/timestepping.hpp"

namespace speclab::harness {

/// Full-precision, locale-independent number text.
inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_text(const std::vector<std::string>& columns,
                            const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& row : rows) {
    require(row.size() == columns.size(), "csv_text: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_number(row[i]);
    out += '\n';
  }
  return out;
}

inline std::string csv_text(const Table& table) { return csv_text(table.columns, table.rows); }

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Named file contents, ordered by name so that emission order is deterministic.
using FileSet = std::map<std::string, std::string>;

inline void write_files(const std::filesystem::path& dir, const FileSet& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + (dir / name).string() + " for writing");
    os << content;
  }
}

struct Manifest {
  std::string config_text;  // emit_config output
  std::string version;
  std::string outcome;      // "ok" or "blowup"
  double wall_seconds = 0.0;
  std::map<std::string, std::string> extra;

  /// key = value lines: config echo, version, outcome, wall time and one
  /// digest per emitted file. Only the wall_time line varies between reruns.
  std::string text(const FileSet& files) const {
    std::string out;
    std::size_t start = 0;
    while (start < config_text.size()) {
      const auto end = config_text.find('\n', start);
      out += "config." + config_text.substr(start, end - start) + "\n";
      if (end == std::string::npos) break;
      start = end + 1;
    }
    out += "version = " + version + "\n";
    out += "outcome = " + outcome + "\n";
    for (const auto& [k, v] : extra) out += k + " = " + v + "\n";
    for (const auto& [name, content] : files)
      out += "digest." + name + " = fnv1a:" + hex64(fnv1a(content)) + "\n";
    out += "wall_time_seconds = " + csv_number(wall_seconds) + "\n";
    return out;
  }
};

}  // namespace speclab::harness
