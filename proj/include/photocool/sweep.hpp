#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "photocool/classical.hpp"
#include "photocool/config.hpp"
#include "photocool/csv.hpp"
#include "photocool/quantum.hpp"
#include "photocool/steady_state.hpp"
#include "photocool/thread_pool.hpp"

namespace photocool {

namespace detail {

// Everything a grid point might need, resolved once per point.
struct PointContext {
  std::optional<NormalizedParams> np;
  std::optional<SystemSpecs> si;
  std::optional<SteadyState> ss;
  std::optional<ClassicalDynamics> dyn;
};

inline PointContext resolve_point(const Config& cfg, int branch) {
  PointContext ctx;
  if (cfg.normalized) {
    ctx.np = cfg.normalized;
    return ctx;
  }
  if (!cfg.si)
    throw ConfigError("config needs either a 'normalized' block or SI parameter blocks");
  ctx.si = cfg.si;
  const SystemSpecs& s = *cfg.si;
  auto branches = solve_steady_state(s.cavity, s.mech, s.pt, s.drive);
  int idx = branch;
  if (idx < 0) idx = default_branch(branches);
  if (idx < 0) idx = 0;  // no stable branch: report the lowest one, flags carry the news
  if (idx >= static_cast<int>(branches.size()))
    throw ConfigError("branch index " + std::to_string(branch) + " out of range (found " +
                      std::to_string(branches.size()) + " steady-state branches)");
  ctx.ss = branches[static_cast<std::size_t>(idx)];
  ctx.dyn = effective_dynamics(s, *ctx.ss);
  ctx.np = normalize(s.cavity, s.mech, s.pt, s.drive, *ctx.ss);
  return ctx;
}

inline const std::vector<std::string>& normalized_quantities() {
  static const std::vector<std::string> q = {
      "gamma_eff_ratio", "delta_omega", "deltaX2", "deltaX2_full",
      "n_min",           "S_plus",      "S_minus"};
  return q;
}

inline const std::vector<std::string>& si_quantities() {
  static const std::vector<std::string> q = {
      "omega_eff", "gamma_eff_ratio", "x2_classical",    "x2_total",
      "T_eff",     "T_eff_normalized", "alpha_sq",       "Delta_over_kappa",
      "x_mean",    "n_min",           "deltaX2"};
  return q;
}

inline double evaluate_quantity(const std::string& name, const PointContext& c) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  try {
    if (name == "n_min") return n_min(*c.np).value;
    if (name == "S_plus") return spectral_asymmetry(*c.np).S_plus;
    if (name == "S_minus") return spectral_asymmetry(*c.np).S_minus;
    if (name == "delta_omega") return backaction_shift_damping(*c.np).delta_omega;
    if (name == "deltaX2") return variance_strong_cooling(*c.np).deltaX2;
    if (name == "deltaX2_full") return variance_full(*c.np);
    if (name == "gamma_eff_ratio") {
      if (c.dyn) return c.dyn->Gamma_eff * c.si->mech.Q / c.si->mech.omega0;
      return backaction_shift_damping(*c.np).gamma_eff_over_gamma;
    }
    if (name == "omega_eff") return c.dyn->omega_eff;
    if (name == "alpha_sq") return c.ss->alpha_sq;
    if (name == "Delta_over_kappa") return c.ss->Delta / c.si->cavity.kappa();
    if (name == "x_mean") return c.ss->x_mean;
    if (name == "x2_classical") return classical_variance(*c.si, *c.ss).x2_classical;
    if (name == "x2_total") return classical_variance(*c.si, *c.ss).x2_total;
    if (name == "T_eff") return classical_variance(*c.si, *c.ss).T_eff;
    if (name == "T_eff_normalized")
      return classical_variance(*c.si, *c.ss).normalized_temperature;
  } catch (const std::domain_error&) {
    // unstable or anti-damped point: the stationary variance does not exist,
    // report inf so grids stay rectangular
    return inf;
  }
  throw ConfigError("unknown sweep quantity '" + name + "'");
}

}  // namespace detail

// Evaluate 1- or 2-axis grids by mutating the config document at the axis
// paths and re-resolving each point. Axis 0 is the outer (slow) index; rows
// are assembled in grid order no matter how the pool schedules them.
inline Csv run_sweep(const Config& base, const SweepSpec& spec, int branch = -1) {
  const bool normalized_mode = base.normalized.has_value();
  std::vector<std::string> quantities = spec.quantities;
  if (quantities.empty())
    quantities = normalized_mode
                     ? std::vector<std::string>{"gamma_eff_ratio", "deltaX2", "n_min"}
                     : std::vector<std::string>{"omega_eff", "gamma_eff_ratio",
                                                "T_eff_normalized", "n_min"};
  const auto& catalog =
      normalized_mode ? detail::normalized_quantities() : detail::si_quantities();
  for (const auto& q : quantities)
    if (std::find(catalog.begin(), catalog.end(), q) == catalog.end())
      throw ConfigError("unknown sweep quantity '" + q + "' for " +
                        (normalized_mode ? std::string("normalized") : std::string("SI")) +
                        " mode");

  std::vector<std::vector<double>> grids;
  for (const auto& ax : spec.axes) grids.push_back(axis_grid(ax));
  const std::size_t n0 = grids[0].size();
  const std::size_t n1 = grids.size() > 1 ? grids[1].size() : 1;
  const std::size_t n_points = n0 * n1;

  std::vector<std::vector<double>> rows(n_points);
  parallel_for(n_points, [&](std::size_t idx) {
    const std::size_t i0 = idx / n1;
    const std::size_t i1 = idx % n1;
    nlohmann::json doc = base.raw;
    set_json_path(doc, spec.axes[0].path, grids[0][i0]);
    if (grids.size() > 1) set_json_path(doc, spec.axes[1].path, grids[1][i1]);
    const Config point = parse_config(doc);
    const detail::PointContext ctx = detail::resolve_point(point, branch);
    std::vector<double> row;
    row.reserve(spec.axes.size() + quantities.size());
    row.push_back(grids[0][i0]);
    if (grids.size() > 1) row.push_back(grids[1][i1]);
    for (const auto& q : quantities) row.push_back(detail::evaluate_quantity(q, ctx));
    rows[idx] = std::move(row);
  });

  Csv csv;
  csv.meta("mode", normalized_mode ? "normalized" : "si");
  for (std::size_t a = 0; a < spec.axes.size(); ++a) {
    const auto& ax = spec.axes[a];
    csv.meta("axis" + std::to_string(a),
             ax.path + " " + format_double(ax.min) + ".." + format_double(ax.max) + " n=" +
                 std::to_string(ax.count) + (ax.log ? " log" : " linear"));
  }
  for (const auto& ax : spec.axes) csv.columns.push_back(ax.path);
  for (const auto& q : quantities) csv.columns.push_back(q);
  for (auto& r : rows) csv.add_row(r);
  return csv;
}

}  // namespace photocool
