#pragma once

// Flat "key = value" experiment configuration with '#' comments.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "speclab/error.hpp"

namespace speclab::harness {

/// Configuration problems: bad syntax, unknown keys, out-of-range values.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct ExperimentConfig {
  std::string experiment;
  std::string variant;
  std::vector<int> n_list;
  double dt = 0.0;  // <= 0: default_dt from the CFL number
  double cfl = 0.5;
  double t_end = 0.0;
  double observe_interval = 0.0;  // <= 0: endpoints only
  std::vector<double> snapshots;
  std::string initial;
  double amplitude = 1.0;
  std::string profile = "mollifier";
  int sv_order = 1;
  std::uint64_t seed = 1;
  std::string law = "exp";
  double gamma = 1.4;
  bool zero_last_mode = false;
  int reference_cells = 16384;
  int workers = 0;  // 0: one per hardware thread
  std::string out = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Canonical key order used by emit_config.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "experiment", "variant", "N",       "dt",   "cfl",   "t_end",          "observe_interval",
      "snapshots",  "initial", "amplitude", "profile", "sv_order", "seed", "law",
      "gamma",      "zero_last_mode", "reference_cells", "workers", "out"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double parse_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("'" + key + "': not a number: '" + text + "'");
  return v;
}

template <class Int>
Int parse_int(const std::string& text, const std::string& key) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("'" + key + "': not an integer: '" + text + "'");
  return v;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + text + "'");
}

}  // namespace detail

/// Sets one key. Throws ConfigError for unknown keys or malformed values.
inline void set_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using namespace detail;
  if (key == "experiment") {
    c.experiment = value;
  } else if (key == "variant") {
    c.variant = value;
  } else if (key == "N") {
    c.n_list.clear();
    for (const auto& item : split_list(value)) c.n_list.push_back(parse_int<int>(item, key));
  } else if (key == "dt") {
    c.dt = parse_double(value, key);
  } else if (key == "cfl") {
    c.cfl = parse_double(value, key);
  } else if (key == "t_end") {
    c.t_end = parse_double(value, key);
  } else if (key == "observe_interval") {
    c.observe_interval = parse_double(value, key);
  } else if (key == "snapshots") {
    c.snapshots.clear();
    for (const auto& item : split_list(value)) c.snapshots.push_back(parse_double(item, key));
  } else if (key == "initial") {
    c.initial = value;
  } else if (key == "amplitude") {
    c.amplitude = parse_double(value, key);
  } else if (key == "profile") {
    c.profile = value;
  } else if (key == "sv_order") {
    c.sv_order = parse_int<int>(value, key);
  } else if (key == "seed") {
    c.seed = parse_int<std::uint64_t>(value, key);
  } else if (key == "law") {
    c.law = value;
  } else if (key == "gamma") {
    c.gamma = parse_double(value, key);
  } else if (key == "zero_last_mode") {
    c.zero_last_mode = parse_bool(value, key);
  } else if (key == "reference_cells") {
    c.reference_cells = parse_int<int>(value, key);
  } else if (key == "workers") {
    c.workers = parse_int<int>(value, key);
  } else if (key == "out") {
    c.out = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Splits the text into ordered entries without interpreting values. Errors
/// carry the 1-based line number.
inline std::vector<ConfigEntry> parse_entries(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::stringstream ss{std::string(text)};
  std::string line;
  int number = 0;
  const auto& keys = config_keys();
  while (std::getline(ss, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    std::string key = detail::trim(std::string_view(body).substr(0, eq));
    std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": missing key");
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    out.push_back({std::move(key), std::move(value), number});
  }
  return out;
}

/// Applies `text` on top of `base`.
inline ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {}) {
  for (const auto& e : parse_entries(text)) {
    try {
      set_value(base, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  return base;
}

inline std::string emit_config(const ExperimentConfig& c) {
  using detail::format_double;
  auto join = [](const auto& items, auto fmt) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + fmt(items[i]);
    return s;
  };
  const std::map<std::string, std::string> values{
      {"experiment", c.experiment},
      {"variant", c.variant},
      {"N", join(c.n_list, [](int n) { return std::to_string(n); })},
      {"dt", format_double(c.dt)},
      {"cfl", format_double(c.cfl)},
      {"t_end", format_double(c.t_end)},
      {"observe_interval", format_double(c.observe_interval)},
      {"snapshots", join(c.snapshots, [](double t) { return format_double(t); })},
      {"initial", c.initial},
      {"amplitude", format_double(c.amplitude)},
      {"profile", c.profile},
      {"sv_order", std::to_string(c.sv_order)},
      {"seed", std::to_string(c.seed)},
      {"law", c.law},
      {"gamma", format_double(c.gamma)},
      {"zero_last_mode", c.zero_last_mode ? "true" : "false"},
      {"reference_cells", std::to_string(c.reference_cells)},
      {"workers", std::to_string(c.workers)},
      {"out", c.out},
  };
  std::string text;
  for (const auto& key : config_keys()) text += key + " = " + values.at(key) + "\n";
  return text;
}

}  // namespace speclab::harness
