#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "photocool/oracle.hpp"
#include "photocool/params.hpp"

namespace photocool {

// Structural/input problems (bad JSON shape, bad sweep spec, unknown ids).
// Distinct from std::invalid_argument, which the validating parameter types
// throw for physically inadmissible values; the CLI maps the two classes to
// different exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string path;  // dotted JSON path, e.g. "normalized.phi"
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log = false;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;             // 1 or 2
  std::vector<std::string> quantities;     // empty -> mode default
};

struct FigureSpec {
  std::string id;      // one of 1a, 1b, 2a, 2b, 3
  int resolution = 0;  // 0 -> per-figure default grid
};

struct OptimizeVariable {
  std::string path;
  double min = 0.0;
  double max = 0.0;
  bool log = false;
  int grid = 25;  // coarse-scan points along this variable
};

struct OptimizeSpec {
  std::vector<OptimizeVariable> variables;
};

struct Config {
  nlohmann::json raw;  // original document, kept for sweep-path mutation
  std::optional<SystemSpecs> si;
  std::optional<NormalizedParams> normalized;
  std::optional<SimConfig> sim;
  std::optional<SweepSpec> sweep;
  std::optional<FigureSpec> figure;
  std::optional<OptimizeSpec> optimize;
};

namespace detail {

inline const nlohmann::json& need(const nlohmann::json& j, const std::string& key,
                                  const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError("config: missing key '" + key + "' in " + ctx);
  return *it;
}

inline double need_num(const nlohmann::json& j, const std::string& key, const std::string& ctx) {
  const nlohmann::json& v = need(j, key, ctx);
  if (!v.is_number()) throw ConfigError("config: '" + ctx + "." + key + "' must be a number");
  return v.get<double>();
}

inline double opt_num(const nlohmann::json& j, const std::string& key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return it->get<double>();
}

inline void check_object(const nlohmann::json& j, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError("config: '" + ctx + "' must be an object");
}

}  // namespace detail

inline SystemSpecs parse_si_specs(const nlohmann::json& j) {
  using detail::need;
  using detail::need_num;
  const nlohmann::json& cav = need(j, "cavity", "config");
  const nlohmann::json& mech = need(j, "mechanics", "config");
  const nlohmann::json& pt = need(j, "photothermal", "config");
  const nlohmann::json& drv = need(j, "drive", "config");
  detail::check_object(cav, "cavity");
  detail::check_object(mech, "mechanics");
  detail::check_object(pt, "photothermal");
  detail::check_object(drv, "drive");
  return SystemSpecs{
      CavitySpec(need_num(cav, "L0", "cavity"), need_num(cav, "lambda", "cavity"),
                 need_num(cav, "T", "cavity"), need_num(cav, "A", "cavity"),
                 need_num(cav, "R", "cavity")),
      MechanicalSpec(need_num(mech, "m", "mechanics"), need_num(mech, "omega0", "mechanics"),
                     need_num(mech, "Q", "mechanics")),
      PhotothermalSpec(need_num(pt, "beta", "photothermal"),
                       need_num(pt, "tau_th", "photothermal")),
      DriveSpec(need_num(drv, "P_inc", "drive"), need_num(drv, "delta_c", "drive"),
                detail::opt_num(drv, "T_env", 0.0))};
}

inline NormalizedParams parse_normalized(const nlohmann::json& n) {
  using detail::need_num;
  detail::check_object(n, "normalized");
  return NormalizedParams(need_num(n, "b", "normalized"), need_num(n, "phi", "normalized"),
                          detail::opt_num(n, "phi_nl", 0.0), need_num(n, "d", "normalized"),
                          need_num(n, "Q", "normalized"), need_num(n, "T", "normalized"),
                          need_num(n, "A", "normalized"), need_num(n, "beta", "normalized"),
                          detail::opt_num(n, "n_i", 0.0));
}

inline SimConfig parse_sim(const nlohmann::json& s) {
  detail::check_object(s, "sim");
  SimConfig sim{};
  sim.dt = detail::need_num(s, "dt", "sim");
  sim.n_steps = static_cast<std::int64_t>(detail::need_num(s, "n_steps", "sim"));
  sim.n_realizations = static_cast<int>(detail::need_num(s, "n_realizations", "sim"));
  sim.burn_in_steps = static_cast<std::int64_t>(detail::need_num(s, "burn_in_steps", "sim"));
  sim.seed = static_cast<std::uint64_t>(detail::opt_num(s, "seed", 12345.0));
  sim.psd_segment_length =
      static_cast<std::size_t>(detail::opt_num(s, "psd_segment_length", double(1 << 14)));
  return sim;
}

inline SweepAxis parse_axis(const nlohmann::json& a, const std::string& ctx) {
  detail::check_object(a, ctx);
  SweepAxis ax;
  const nlohmann::json& p = detail::need(a, "path", ctx);
  if (!p.is_string()) throw ConfigError("config: '" + ctx + ".path' must be a string");
  ax.path = p.get<std::string>();
  ax.min = detail::need_num(a, "min", ctx);
  ax.max = detail::need_num(a, "max", ctx);
  ax.count = static_cast<int>(detail::need_num(a, "count", ctx));
  auto it = a.find("scale");
  if (it != a.end()) {
    if (!it->is_string()) throw ConfigError("config: '" + ctx + ".scale' must be a string");
    const std::string s = it->get<std::string>();
    if (s == "log")
      ax.log = true;
    else if (s != "linear")
      throw ConfigError("config: '" + ctx + ".scale' must be \"linear\" or \"log\"");
  }
  if (ax.count < 2) throw ConfigError("sweep axis '" + ax.path + "': count must be >= 2");
  if (!(ax.max > ax.min))
    throw ConfigError("sweep axis '" + ax.path + "': max must exceed min");
  if (ax.log && !(ax.min > 0.0))
    throw ConfigError("sweep axis '" + ax.path + "': log spacing requires positive bounds");
  return ax;
}

inline SweepSpec parse_sweep(const nlohmann::json& s) {
  detail::check_object(s, "sweep");
  SweepSpec spec;
  const nlohmann::json& axes = detail::need(s, "axes", "sweep");
  if (!axes.is_array() || axes.empty() || axes.size() > 2)
    throw ConfigError("config: 'sweep.axes' must be an array of 1 or 2 axis objects");
  for (const auto& a : axes) spec.axes.push_back(parse_axis(a, "sweep.axes[]"));
  auto it = s.find("quantities");
  if (it != s.end()) {
    if (!it->is_array()) throw ConfigError("config: 'sweep.quantities' must be an array");
    for (const auto& q : *it) {
      if (!q.is_string()) throw ConfigError("config: 'sweep.quantities' entries must be strings");
      spec.quantities.push_back(q.get<std::string>());
    }
  }
  return spec;
}

inline FigureSpec parse_figure(const nlohmann::json& f) {
  FigureSpec spec;
  if (f.is_string()) {
    spec.id = f.get<std::string>();
  } else {
    detail::check_object(f, "figure");
    const nlohmann::json& id = detail::need(f, "id", "figure");
    if (!id.is_string()) throw ConfigError("config: 'figure.id' must be a string");
    spec.id = id.get<std::string>();
    spec.resolution = static_cast<int>(detail::opt_num(f, "resolution", 0.0));
  }
  static const char* known[] = {"1a", "1b", "2a", "2b", "3"};
  bool ok = false;
  for (const char* k : known) ok = ok || (spec.id == k);
  if (!ok)
    throw ConfigError("unknown figure id '" + spec.id + "' (expected 1a, 1b, 2a, 2b, or 3)");
  if (spec.resolution < 0) throw ConfigError("config: 'figure.resolution' must be non-negative");
  return spec;
}

inline OptimizeSpec parse_optimize(const nlohmann::json& o) {
  detail::check_object(o, "optimize");
  OptimizeSpec spec;
  const nlohmann::json& vars = detail::need(o, "variables", "optimize");
  if (!vars.is_array() || vars.empty() || vars.size() > 3)
    throw ConfigError("config: 'optimize.variables' must be an array of 1..3 variable objects");
  for (const auto& v : vars) {
    detail::check_object(v, "optimize.variables[]");
    OptimizeVariable var;
    const nlohmann::json& p = detail::need(v, "path", "optimize.variables[]");
    if (!p.is_string()) throw ConfigError("config: optimize variable path must be a string");
    var.path = p.get<std::string>();
    var.min = detail::need_num(v, "min", "optimize.variables[]");
    var.max = detail::need_num(v, "max", "optimize.variables[]");
    var.grid = static_cast<int>(detail::opt_num(v, "grid", 25.0));
    auto it = v.find("scale");
    if (it != v.end() && it->is_string() && it->get<std::string>() == "log") var.log = true;
    if (!(var.max > var.min))
      throw ConfigError("optimize variable '" + var.path + "': max must exceed min");
    if (var.log && !(var.min > 0.0))
      throw ConfigError("optimize variable '" + var.path + "': log scale requires positive bounds");
    if (var.grid < 2)
      throw ConfigError("optimize variable '" + var.path + "': grid must be >= 2");
    spec.variables.push_back(var);
  }
  return spec;
}

inline Config parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  Config cfg;
  cfg.raw = j;
  const bool has_si = j.contains("cavity") || j.contains("mechanics") ||
                      j.contains("photothermal") || j.contains("drive");
  const bool has_norm = j.contains("normalized");
  if (has_si && has_norm)
    throw ConfigError("config: SI blocks (cavity/mechanics/photothermal/drive) and "
                      "'normalized' are mutually exclusive");
  if (has_si) cfg.si = parse_si_specs(j);
  if (has_norm) cfg.normalized = parse_normalized(j.at("normalized"));
  if (j.contains("sim")) cfg.sim = parse_sim(j.at("sim"));
  if (j.contains("sweep")) cfg.sweep = parse_sweep(j.at("sweep"));
  if (j.contains("figure")) cfg.figure = parse_figure(j.at("figure"));
  if (j.contains("optimize")) cfg.optimize = parse_optimize(j.at("optimize"));
  return cfg;
}

// Propagates nlohmann parse_error (message carries line/column) on bad JSON.
inline Config load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  return parse_config(j);
}

// Assign `value` at a dotted path inside the document. The path must address
// an existing scalar so sweep typos fail loudly instead of sweeping nothing.
inline void set_json_path(nlohmann::json& doc, const std::string& path, double value) {
  nlohmann::json* node = &doc;
  std::size_t start = 0;
  std::vector<std::string> parts;
  while (true) {
    const std::size_t dot = path.find('.', start);
    parts.push_back(path.substr(start, dot == std::string::npos ? dot : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i]))
      throw ConfigError("sweep path '" + path + "' does not address an existing config value");
    node = &(*node)[parts[i]];
  }
  if (!node->is_object() || !node->contains(parts.back()))
    throw ConfigError("sweep path '" + path + "' does not address an existing config value");
  (*node)[parts.back()] = value;
}

inline std::vector<double> axis_grid(double lo, double hi, int count, bool log) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : double(i) / double(count - 1);
    g[static_cast<std::size_t>(i)] =
        log ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
  }
  return g;
}

inline std::vector<double> axis_grid(const SweepAxis& ax) {
  return axis_grid(ax.min, ax.max, ax.count, ax.log);
}

}  // namespace photocool
