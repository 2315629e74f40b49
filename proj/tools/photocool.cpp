// photocool: cavity cooling predictions for a mirror driven by radiation
// pressure and delayed photothermal forces. Subcommands cover single-point
// reports, noise spectra, parameter sweeps, figure generation, occupancy
// optimization, and a stochastic cross-check of the classical engine.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "photocool/classical.hpp"
#include "photocool/config.hpp"
#include "photocool/csv.hpp"
#include "photocool/figures.hpp"
#include "photocool/optimize.hpp"
#include "photocool/oracle.hpp"
#include "photocool/params.hpp"
#include "photocool/quantum.hpp"
#include "photocool/steady_state.hpp"
#include "photocool/sweep.hpp"

namespace pc = photocool;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  long long seed = -1;
  int branch = -1;
};

std::string fmt(double v) { return pc::format_double(v); }

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "JSON configuration file")->required();
  sub->add_option("--out", o.out_dir, "output directory (default: current)");
  sub->add_option("--seed", o.seed, "override the stochastic seed");
  sub->add_option("--branch", o.branch, "steady-state branch index (default: first stable)");
}

fs::path out_path(const CommonOpts& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / name;
}

struct ResolvedPoint {
  pc::Config cfg;
  std::vector<pc::SteadyState> branches;
  int branch = -1;
  std::optional<pc::SteadyState> ss;
  std::optional<pc::NormalizedParams> np;
};

ResolvedPoint resolve(const CommonOpts& o) {
  ResolvedPoint r;
  r.cfg = pc::load_config_file(o.config_path);
  if (r.cfg.normalized) {
    r.np = r.cfg.normalized;
    return r;
  }
  if (!r.cfg.si)
    throw pc::ConfigError("config needs either a 'normalized' block or SI parameter blocks");
  const pc::SystemSpecs& s = *r.cfg.si;
  r.branches = pc::solve_steady_state(s.cavity, s.mech, s.pt, s.drive);
  r.branch = o.branch >= 0 ? o.branch : pc::default_branch(r.branches);
  if (r.branch < 0) r.branch = 0;
  if (r.branch >= static_cast<int>(r.branches.size()))
    throw pc::ConfigError("branch index " + std::to_string(o.branch) + " out of range (found " +
                          std::to_string(r.branches.size()) + " branches)");
  r.ss = r.branches[static_cast<std::size_t>(r.branch)];
  r.np = pc::normalize(s.cavity, s.mech, s.pt, s.drive, *r.ss);
  return r;
}

nlohmann::json quantum_json(const pc::NormalizedParams& np) {
  nlohmann::json q;
  const bool driven = np.phi_nl > 0.0;
  q["normalized"] = {{"b", np.b},         {"phi", np.phi}, {"phi_nl", np.phi_nl},
                     {"d", np.d},         {"Q", np.Q},     {"T", np.T},
                     {"A", np.A},         {"beta", np.beta}, {"n_i", np.n_i}};
  if (!driven) {
    q["cooling"] = false;
    q["thermal_occupancy"] = np.n_i;
    return q;
  }
  const pc::BackAction ba = pc::backaction_shift_damping(np);
  const pc::NminResult nm = pc::n_min(np);
  q["delta_omega"] = ba.delta_omega;
  q["gamma_eff_over_gamma"] = ba.gamma_eff_over_gamma;
  q["n_min"] = nm.value;
  q["cooling"] = nm.cooling && ba.gamma_opt_over_gamma > 0.0;
  try {
    const pc::QuantumCoolingReport rep = pc::variance_strong_cooling(np);
    q["deltaX2"] = rep.deltaX2;
    q["occupancy"] = rep.occupancy;
    q["strong_cooling"] = rep.strong_cooling;
    q["peaked_response"] = rep.peaked_response;
  } catch (const std::domain_error&) {
    q["deltaX2"] = nullptr;  // anti-damped: no stationary variance
  }
  return q;
}

void print_quantum(const pc::NormalizedParams& np) {
  std::cout << "normalized parameters:\n";
  std::cout << "  b = " << fmt(np.b) << "\n";
  std::cout << "  phi = " << fmt(np.phi) << "\n";
  std::cout << "  phi_nl = " << fmt(np.phi_nl) << "\n";
  std::cout << "  d = " << fmt(np.d) << "\n";
  std::cout << "  Q = " << fmt(np.Q) << "\n";
  std::cout << "  T = " << fmt(np.T) << ", A = " << fmt(np.A) << ", beta = " << fmt(np.beta)
            << "\n";
  std::cout << "  n_i = " << fmt(np.n_i) << "\n";
  if (np.phi_nl <= 0.0) {
    std::cout << "quantum: drive off -> no cooling; thermal occupancy n_i = " << fmt(np.n_i)
              << "\n";
    return;
  }
  const pc::BackAction ba = pc::backaction_shift_damping(np);
  const pc::NminResult nm = pc::n_min(np);
  std::cout << "quantum back-action:\n";
  std::cout << "  frequency shift delta_omega_hat = " << fmt(ba.delta_omega) << "\n";
  std::cout << "  Gamma_eff / Gamma = " << fmt(ba.gamma_eff_over_gamma) << "\n";
  if (nm.cooling)
    std::cout << "  n_min = " << fmt(nm.value) << "\n";
  else
    std::cout << "  n_min = inf (no cooling: spectral asymmetry favors heating)\n";
  try {
    const pc::QuantumCoolingReport rep = pc::variance_strong_cooling(np);
    std::cout << "  deltaX2 (zero-point units) = " << fmt(rep.deltaX2) << "\n";
    std::cout << "  occupancy = " << fmt(rep.occupancy) << "\n";
    std::cout << "  strong cooling: " << (rep.strong_cooling ? "yes" : "no")
              << ", peaked response: " << (rep.peaked_response ? "yes" : "no") << "\n";
  } catch (const std::domain_error&) {
    std::cout << "  deltaX2: undefined (anti-damped point)\n";
  }
}

int run_report(const CommonOpts& o) {
  ResolvedPoint r = resolve(o);
  nlohmann::json out;
  if (r.cfg.si) {
    const pc::SystemSpecs& s = *r.cfg.si;
    std::cout << "steady-state branches:\n";
    std::cout << "  #   alpha_sq        Delta/kappa     x_mean [m]      stable\n";
    for (std::size_t i = 0; i < r.branches.size(); ++i) {
      const pc::SteadyState& b = r.branches[i];
      std::printf("  %-3zu %-15.6g %-15.6g %-15.6g %s\n", i, b.alpha_sq,
                  b.Delta / s.cavity.kappa(), b.x_mean, b.stable ? "yes" : "no");
      out["branches"].push_back({{"alpha_sq", b.alpha_sq},
                                 {"Delta", b.Delta},
                                 {"Delta_nl", b.Delta_nl},
                                 {"x_mean", b.x_mean},
                                 {"stable", b.stable}});
    }
    std::cout << "selected branch: " << r.branch << "\n\n";
    out["selected_branch"] = r.branch;

    const pc::ClassicalDynamics dyn = pc::effective_dynamics(s, *r.ss);
    std::cout << "classical effective dynamics:\n";
    std::cout << "  omega_eff / omega0 = "
              << (dyn.statically_stable ? fmt(dyn.omega_eff / s.mech.omega0) : "unstable") << "\n";
    std::cout << "  Gamma_eff / Gamma = " << fmt(dyn.Gamma_eff / s.mech.Gamma()) << "\n";
    std::cout << "  P_circ [W] = " << fmt(dyn.P_circ0) << ", P_abs [W] = " << fmt(dyn.P_abs0)
              << "\n";
    std::cout << "  statically stable: " << (dyn.statically_stable ? "yes" : "no") << "\n";
    out["classical"] = {{"omega_eff", dyn.omega_eff},
                        {"gamma_eff", dyn.Gamma_eff},
                        {"gamma_eff_over_gamma", dyn.Gamma_eff / s.mech.Gamma()},
                        {"P_circ", dyn.P_circ0},
                        {"P_abs", dyn.P_abs0},
                        {"statically_stable", dyn.statically_stable}};
    if (s.drive.P_inc <= 0.0) {
      const double ni = pc::thermal_occupancy(s.drive.T_env, s.mech.omega0);
      std::cout << "  drive off -> no cooling; thermal occupancy n_i = " << fmt(ni) << "\n";
      out["classical"]["thermal_occupancy"] = ni;
    } else {
      try {
        const pc::ClassicalVariance cv = pc::classical_variance(s, *r.ss);
        std::cout << "  <x^2> classical [m^2] = " << fmt(cv.x2_classical) << "\n";
        std::cout << "  T_eff [K] = " << fmt(cv.T_eff)
                  << ", normalized temperature = " << fmt(cv.normalized_temperature) << "\n";
        std::cout << "  strong cooling regime: "
                  << (pc::strong_cooling_regime(dyn, s.mech) ? "yes" : "no") << "\n";
        out["classical"]["x2_classical"] = cv.x2_classical;
        out["classical"]["x2_total"] = cv.x2_total;
        out["classical"]["T_eff"] = cv.T_eff;
        out["classical"]["normalized_temperature"] = cv.normalized_temperature;
      } catch (const std::domain_error& e) {
        std::cout << "  variance: " << e.what() << "\n";
        out["classical"]["variance_error"] = e.what();
      }
    }
    std::cout << "\n";
  }
  print_quantum(*r.np);
  out["quantum"] = quantum_json(*r.np);
  const fs::path p = out_path(o, "report.json");
  std::ofstream f(p);
  f << out.dump(2) << "\n";
  std::cout << "\nwrote " << p.string() << "\n";
  return 0;
}

int run_spectrum(const CommonOpts& o) {
  ResolvedPoint r = resolve(o);
  double lo = -300.0, hi = 300.0;
  int count = 1201;
  bool log_axis = false;
  if (r.cfg.raw.contains("spectrum")) {
    const auto& sp = r.cfg.raw.at("spectrum");
    lo = pc::detail::opt_num(sp, "min", lo);
    hi = pc::detail::opt_num(sp, "max", hi);
    count = static_cast<int>(pc::detail::opt_num(sp, "count", count));
    if (sp.contains("scale") && sp.at("scale") == "log") log_axis = true;
    if (count < 2) throw pc::ConfigError("spectrum.count must be >= 2");
  }
  pc::Csv csv;
  if (r.cfg.si) {
    const pc::SystemSpecs& s = *r.cfg.si;
    const pc::ClassicalDynamics dyn = pc::effective_dynamics(s, *r.ss);
    if (!dyn.statically_stable)
      throw std::domain_error("spectrum: statically unstable operating point");
    if (!r.cfg.raw.contains("spectrum")) {  // default window around the resonance
      lo = -2.0 * dyn.omega_eff;
      hi = 2.0 * dyn.omega_eff;
    }
    csv.meta("mode", "si_position_psd");
    csv.meta("omega_eff", dyn.omega_eff);
    csv.meta("gamma_eff", dyn.Gamma_eff);
    csv.columns = {"omega", "S_xx"};
    for (double w : pc::axis_grid(lo, hi, count, log_axis))
      csv.add_row({w, pc::position_psd_classical(w, s, *r.ss)});
  } else {
    csv.meta("mode", "normalized_force_psd");
    csv.meta("b", r.np->b);
    csv.meta("phi", r.np->phi);
    csv.meta("d", r.np->d);
    csv.columns = {"Omega", "S_fopt"};
    for (double w : pc::axis_grid(lo, hi, count, log_axis))
      csv.add_row({w, pc::optical_force_spectrum(w, *r.np)});
  }
  const fs::path p = out_path(o, "spectrum.csv");
  csv.write(p.string());
  std::cout << "wrote " << p.string() << "\n";
  return 0;
}

int run_sweep(const CommonOpts& o) {
  pc::Config cfg = pc::load_config_file(o.config_path);
  if (!cfg.sweep) throw pc::ConfigError("sweep: config needs a 'sweep' block");
  pc::Csv csv = pc::run_sweep(cfg, *cfg.sweep, o.branch);
  if (o.seed >= 0) csv.meta("seed", static_cast<double>(o.seed));
  const fs::path p = out_path(o, "sweep.csv");
  csv.write(p.string());
  std::cout << "wrote " << p.string() << " (" << csv.rows.size() << " rows)\n";
  return 0;
}

int run_figure(const CommonOpts& o) {
  pc::Config cfg = pc::load_config_file(o.config_path);
  if (!cfg.figure) throw pc::ConfigError("figure: config needs a 'figure' block");
  const pc::FigureOutput fig = pc::make_figure(*cfg.figure);
  const fs::path pcsv = out_path(o, fig.stem + ".csv");
  const fs::path psvg = out_path(o, fig.stem + ".svg");
  fig.csv.write(pcsv.string());
  pc::svg::write_file(psvg.string(), fig.svg);
  std::cout << "wrote " << pcsv.string() << " and " << psvg.string() << "\n";
  return 0;
}

int run_optimize(const CommonOpts& o) {
  pc::Config cfg = pc::load_config_file(o.config_path);
  if (!cfg.optimize) throw pc::ConfigError("optimize: config needs an 'optimize' block");
  const pc::OptimizeResult res = pc::optimize_n_min(cfg, *cfg.optimize, o.branch);
  std::cout << "optimum (after simplex refinement):\n";
  for (std::size_t k = 0; k < cfg.optimize->variables.size(); ++k)
    std::cout << "  " << cfg.optimize->variables[k].path << " = " << fmt(res.best.values[k])
              << "\n";
  std::cout << "  n_min = " << fmt(res.best.n_min) << "\n";
  std::cout << "grid best: n_min = " << fmt(res.best_grid.n_min) << "\n";
  std::cout << "grid runner-ups:\n";
  for (const auto& p : res.runner_ups) {
    std::cout << " ";
    for (std::size_t k = 0; k < p.values.size(); ++k)
      std::cout << " " << cfg.optimize->variables[k].path << "=" << fmt(p.values[k]);
    std::cout << "  n_min=" << fmt(p.n_min) << "\n";
  }
  std::cout << "objective evaluations: " << res.evaluations << "\n";
  nlohmann::json out;
  for (std::size_t k = 0; k < cfg.optimize->variables.size(); ++k)
    out["best"][cfg.optimize->variables[k].path] = res.best.values[k];
  out["best"]["n_min"] = res.best.n_min;
  out["evaluations"] = res.evaluations;
  for (const auto& p : res.runner_ups) {
    nlohmann::json row;
    for (std::size_t k = 0; k < p.values.size(); ++k)
      row[cfg.optimize->variables[k].path] = p.values[k];
    row["n_min"] = p.n_min;
    out["runner_ups"].push_back(row);
  }
  const fs::path p = out_path(o, "optimize.json");
  std::ofstream f(p);
  f << out.dump(2) << "\n";
  std::cout << "wrote " << p.string() << "\n";
  return 0;
}

int run_oracle(const CommonOpts& o) {
  ResolvedPoint r = resolve(o);
  if (!r.cfg.si) throw pc::ConfigError("oracle: config needs SI parameter blocks");
  if (!r.cfg.sim) throw pc::ConfigError("oracle: config needs a 'sim' block");
  const pc::SystemSpecs& s = *r.cfg.si;
  pc::SimConfig sim = *r.cfg.sim;
  if (o.seed >= 0) sim.seed = static_cast<std::uint64_t>(o.seed);
  pc::validate_sim_config(s, *r.ss, sim);
  const pc::ClassicalVariance cv = pc::classical_variance(s, *r.ss);
  const pc::VarianceEstimate est = pc::simulate_classical(s, *r.ss, sim);
  const double diff = est.var_x - cv.x2_classical;
  const double sigmas = std::abs(diff) / est.stderr_var;
  const bool pass = sigmas <= 3.0;
  std::cout << "stochastic cross-check of the classical variance\n";
  std::cout << "  analytic <x^2> [m^2] = " << fmt(cv.x2_classical) << "\n";
  std::cout << "  Monte-Carlo <x^2> [m^2] = " << fmt(est.var_x) << "\n";
  std::cout << "  stderr [m^2] = " << fmt(est.stderr_var) << "\n";
  std::cout << "  mean x [m] = " << fmt(est.mean_x) << "\n";
  std::cout << "  relative difference = " << fmt(diff / cv.x2_classical) << "\n";
  std::cout << "  |diff| / stderr = " << fmt(sigmas) << "\n";
  std::cout << "  verdict: " << (pass ? "PASS" : "FAIL") << " (3-stderr criterion)\n";
  nlohmann::json out{{"analytic_x2", cv.x2_classical},
                     {"mc_x2", est.var_x},
                     {"stderr", est.stderr_var},
                     {"mean_x", est.mean_x},
                     {"n_effective_samples", est.n_effective_samples},
                     {"sigmas", sigmas},
                     {"pass", pass},
                     {"seed", sim.seed}};
  const fs::path p = out_path(o, "oracle.json");
  std::ofstream f(p);
  f << out.dump(2) << "\n";
  std::cout << "wrote " << p.string() << "\n";
  return pass ? 0 : 1;
}

template <typename F>
int protect(F&& f) {
  try {
    return f();
  } catch (const pc::NoCoolingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 2;
  } catch (const pc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavity cooling of a mechanical mirror by radiation pressure and "
               "photothermal forces: spectra, variances, occupancy floors, and a "
               "stochastic oracle"};
  app.require_subcommand(1);
  CommonOpts opts;
  int rc = 0;

  auto* report = app.add_subcommand("report", "single-point cooling report");
  add_common(report, opts);
  report->callback([&] { rc = protect([&] { return run_report(opts); }); });

  auto* spectrum = app.add_subcommand("spectrum", "noise spectrum at the operating point");
  add_common(spectrum, opts);
  spectrum->callback([&] { rc = protect([&] { return run_spectrum(opts); }); });

  auto* sweep = app.add_subcommand("sweep", "grid sweep to CSV");
  add_common(sweep, opts);
  sweep->callback([&] { rc = protect([&] { return run_sweep(opts); }); });

  auto* figure = app.add_subcommand("figure", "generate a predefined figure (CSV + SVG)");
  add_common(figure, opts);
  figure->callback([&] { rc = protect([&] { return run_figure(opts); }); });

  auto* optimize = app.add_subcommand("optimize", "minimize n_min over parameter bounds");
  add_common(optimize, opts);
  optimize->callback([&] { rc = protect([&] { return run_optimize(opts); }); });

  auto* oracle = app.add_subcommand("oracle", "Monte-Carlo cross-check of the classical engine");
  add_common(oracle, opts);
  oracle->callback([&] { rc = protect([&] { return run_oracle(opts); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
