#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "photocool/config.hpp"
#include "photocool/quantum.hpp"
#include "photocool/sweep.hpp"

namespace photocool {

// Raised when every probed point fails to cool; the CLI maps this to its own
// exit code so scripted scans can tell "no optimum exists" from input errors.
struct NoCoolingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OptimumPoint {
  std::vector<double> values;  // variable values, in the order they were declared
  double n_min = std::numeric_limits<double>::infinity();
};

struct OptimizeResult {
  OptimumPoint best;       // after simplex refinement
  OptimumPoint best_grid;  // coarse-scan winner
  std::vector<OptimumPoint> runner_ups;
  long evaluations = 0;
};

namespace detail {

struct NminObjective {
  const Config* base;
  const OptimizeSpec* spec;
  int branch;
  mutable long evals = 0;

  // unit-box coordinate -> physical value for variable k
  double map_coord(std::size_t k, double t) const {
    const OptimizeVariable& v = spec->variables[k];
    t = std::clamp(t, 0.0, 1.0);
    return v.log ? v.min * std::pow(v.max / v.min, t) : v.min + t * (v.max - v.min);
  }

  double operator()(const std::vector<double>& ts, std::vector<double>* out = nullptr) const {
    nlohmann::json doc = base->raw;
    std::vector<double> vals(spec->variables.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
      vals[k] = map_coord(k, ts[k]);
      set_json_path(doc, spec->variables[k].path, vals[k]);
    }
    if (out) *out = vals;
    ++evals;
    try {
      const Config point = parse_config(doc);
      const PointContext ctx = resolve_point(point, branch);
      return n_min(*ctx.np).value;
    } catch (const std::invalid_argument&) {
      return std::numeric_limits<double>::infinity();  // outside the physical domain
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

inline double log_objective(double v) {
  if (!std::isfinite(v)) return 1e300;
  return std::log(std::max(v, 1e-300));
}

}  // namespace detail

// Coarse full-factorial scan over the variable box, then Nelder-Mead on
// log n_min seeded at the scan winner. Purely deterministic: fixed grid,
// fixed simplex schedule, no randomness.
inline OptimizeResult optimize_n_min(const Config& base, const OptimizeSpec& spec,
                                     int branch = -1) {
  const std::size_t dim = spec.variables.size();
  detail::NminObjective obj{&base, &spec, branch};

  std::vector<int> counts;
  for (const auto& v : spec.variables) counts.push_back(v.grid);

  struct GridEntry {
    std::vector<double> ts;
    double value;
  };
  std::vector<GridEntry> entries;
  std::vector<int> idx(dim, 0);
  while (true) {
    std::vector<double> ts(dim);
    for (std::size_t k = 0; k < dim; ++k)
      ts[k] = counts[k] == 1 ? 0.0 : double(idx[k]) / double(counts[k] - 1);
    entries.push_back({ts, obj(ts)});
    std::size_t k = 0;
    for (; k < dim; ++k) {
      if (++idx[k] < counts[k]) break;
      idx[k] = 0;
    }
    if (k == dim) break;
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const GridEntry& a, const GridEntry& b) { return a.value < b.value; });
  if (!std::isfinite(entries.front().value))
    throw NoCoolingError("no cooling anywhere on the optimization grid");

  auto to_point = [&](const std::vector<double>& ts, double value) {
    OptimumPoint p;
    p.n_min = value;
    p.values.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) p.values[k] = obj.map_coord(k, ts[k]);
    return p;
  };

  OptimizeResult result;
  result.best_grid = to_point(entries.front().ts, entries.front().value);
  for (std::size_t i = 1; i < entries.size() && result.runner_ups.size() < 5; ++i)
    if (std::isfinite(entries[i].value))
      result.runner_ups.push_back(to_point(entries[i].ts, entries[i].value));

  // --- simplex refinement in the unit box ---
  struct Vertex {
    std::vector<double> ts;
    double v;  // raw n_min
    double f;  // log objective
  };
  auto make_vertex = [&](std::vector<double> ts) {
    for (double& t : ts) t = std::clamp(t, 0.0, 1.0);
    const double v = obj(ts);
    return Vertex{std::move(ts), v, detail::log_objective(v)};
  };
  std::vector<Vertex> simplex;
  simplex.push_back(make_vertex(entries.front().ts));
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> ts = entries.front().ts;
    double h = counts[k] > 1 ? 1.0 / double(counts[k] - 1) : 0.25;
    if (ts[k] + h > 1.0) h = -h;
    ts[k] += h;
    simplex.push_back(make_vertex(ts));
  }

  const int max_iter = 200 * static_cast<int>(dim);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double spread = simplex.back().f - simplex.front().f;
    double diam = 0.0;
    for (std::size_t k = 0; k < dim; ++k)
      diam = std::max(diam, std::abs(simplex.back().ts[k] - simplex.front().ts[k]));
    if (spread < 1e-12 * (1.0 + std::abs(simplex.front().f)) || diam < 1e-9) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i].ts[k];
    for (double& c : centroid) c /= double(dim);

    auto blend = [&](double coeff) {
      std::vector<double> ts(dim);
      for (std::size_t k = 0; k < dim; ++k)
        ts[k] = centroid[k] + coeff * (centroid[k] - simplex.back().ts[k]);
      return make_vertex(std::move(ts));
    };

    Vertex reflected = blend(1.0);
    if (reflected.f < simplex.front().f) {
      Vertex expanded = blend(2.0);
      simplex.back() = expanded.f < reflected.f ? expanded : reflected;
    } else if (reflected.f < simplex[simplex.size() - 2].f) {
      simplex.back() = reflected;
    } else {
      Vertex contracted = blend(-0.5);
      if (contracted.f < simplex.back().f) {
        simplex.back() = contracted;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          std::vector<double> ts(dim);
          for (std::size_t k = 0; k < dim; ++k)
            ts[k] = 0.5 * (simplex[0].ts[k] + simplex[i].ts[k]);
          simplex[i] = make_vertex(std::move(ts));
        }
      }
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(),
                   [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

  result.best = simplex.front().v <= result.best_grid.n_min
                    ? to_point(simplex.front().ts, simplex.front().v)
                    : result.best_grid;
  result.evaluations = obj.evals;
  return result;
}

}  // namespace photocool
