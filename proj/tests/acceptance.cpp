// Exit gate for the engine: ten numbered checks, each printing one verdict
// line with its measured error and pinned tolerance. Exits nonzero if any
// check fails. Kept free of any test framework so the output reads as a
// plain protocol.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "photocool/classical.hpp"
#include "photocool/config.hpp"
#include "photocool/csv.hpp"
#include "photocool/figures.hpp"
#include "photocool/oracle.hpp"
#include "photocool/params.hpp"
#include "photocool/quantum.hpp"
#include "photocool/steady_state.hpp"

using namespace photocool;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return std::string(buf);
}

double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return lo * std::pow(hi / lo, u(rng));
}

double find_meta(const Csv& csv, const std::string& key) {
  for (const auto& [k, v] : csv.metadata)
    if (k == key) return std::stod(v);
  throw std::runtime_error("metadata key missing: " + key);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// shared strongly-cooled embodiment: red flank Delta = kappa, Gamma_eff /
// Gamma = 1e3, resolved sideband ratio b << 1 in SI form
struct StrongCoolingPoint {
  CavitySpec cav{1e-2, 1064e-9, 0.01, 0.1, 0.99};
  MechanicalSpec mech{1e-12, 2.0 * pi * 1e6, 1e6};
  PhotothermalSpec pt{1e5, 1.5915494309189535e-06};
  DetunedOperatingPoint op;
  SystemSpecs specs;
  StrongCoolingPoint()
      : op(drive_for_detuning(cav, mech, pt, 8.4961455496e-06, 1.0, cav.kappa())),
        specs{cav, mech, pt, op.drive} {}
};

// ---------------------------------------------------------------------------

Verdict check_1_absorbed_slope() {
  const CavitySpec cav(1e-2, 1064e-9, 0.01, 0.01, 1.0);  // A = T
  const double kappa = cav.kappa();
  const AbsorbedPowerLinearization lin = absorbed_power_linearized_at(cav, 1e-6, kappa);
  const double want = 8.0 * cav.finesse() / cav.lambda * lin.P_abs0;
  const double err = rel_err(lin.dPabs_dx, want);
  return {err <= 1e-12, strf("rel err %.2e (tol 1e-12)", err)};
}

Verdict check_2_deep_cooling_variance() {
  const CavitySpec cav(1e-2, 1064e-9, 0.002, 0.008, 1.0);  // R = 1
  const MechanicalSpec mech(1e-12, 2.0 * pi * 1e5, 1e5);
  const PhotothermalSpec pt(2e4, 3e-5);
  const double kappa = cav.kappa();
  const DetunedOperatingPoint op = drive_for_detuning(cav, mech, pt, 1e-7, 0.0, kappa);
  SteadyState ss = op.ss;
  ss.Delta = kappa;  // evaluate exactly on the flank
  const SystemSpecs s{cav, mech, pt, op.drive};
  const double J = strong_cooling_variance(s, ss);
  const double closed = pt.beta * (cav.T + cav.A) * hbar / (8.0 * pt.tau_th);
  const double absorption_only = pt.beta * cav.A * hbar / (8.0 * pt.tau_th);
  const double e1 = rel_err(J, closed);
  const double e2 = rel_err(J / absorption_only, 1.0 + cav.T / cav.A);
  return {e1 <= 1e-13 && e2 <= 1e-13,
          strf("rel err %.2e vs beta (T+A) hbar / (8 tau_th); factor (1 + T/A) err %.2e "
               "(tol 1e-13)",
               e1, e2)};
}

Verdict check_3_pressure_only_floor() {
  double worst = 0.0;
  for (double b : axis_grid(1e-2, 5.0, 20, true)) {
    for (double phi : axis_grid(1e-2, 5.0, 20, true)) {
      const NormalizedParams np(b, phi, 1e-6, 1.0, 1e4, 0.001, 0.01, 0.0, 0.0);
      const NminResult nm = n_min(np);
      const double want = (1.0 + (phi - b) * (phi - b)) / (4.0 * b * phi);
      worst = std::max(worst, rel_err(nm.value, want));
      if (!nm.cooling) return {false, strf("grid point b=%g phi=%g not cooling", b, phi)};
    }
  }
  return {worst <= 1e-10, strf("20x20 grid, worst rel err %.2e (tol 1e-10)", worst)};
}

Verdict check_4_resonant_symmetry() {
  std::mt19937_64 rng(421);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_sym = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double b = log_uniform(rng, 1e-3, 10.0);
    const double d = log_uniform(rng, 1e-2, 1e4);
    const double T = log_uniform(rng, 1e-5, 0.1);
    const double A = log_uniform(rng, 1e-5, 0.1);
    const double beta = (i % 2 == 0) ? 0.0 : log_uniform(rng, 1.0, 1e5);
    const NormalizedParams np(b, 0.0, 1e-6, d, 1e4, T, A, beta, 0.0);
    const double W = 10.0 * u(rng) + 1e-3;
    worst_sym = std::max(
        worst_sym, rel_err(optical_force_spectrum(W, np), optical_force_spectrum(-W, np)));
    const BackAction ba = backaction_shift_damping(np);
    if (ba.delta_omega != 0.0 || ba.gamma_eff_over_gamma != 1.0)
      return {false, strf("nonzero back-action at phi = 0 (draw %d)", i)};
    if (n_min(np).cooling) return {false, strf("cooling claimed at phi = 0 (draw %d)", i)};
  }
  return {worst_sym <= 1e-12,
          strf("10000 draws, worst spectral asymmetry %.2e (tol 1e-12); shift = 0 and "
               "Gamma_eff = Gamma exactly",
               worst_sym)};
}

Verdict check_5_detailed_balance() {
  std::mt19937_64 rng(522);
  double worst = 0.0;
  int cooled = 0;
  for (int i = 0; i < 10000; ++i) {
    const double b = log_uniform(rng, 1e-3, 10.0);
    const double phi = log_uniform(rng, 0.05, 5.0);
    const double d = log_uniform(rng, 1e-2, 1e4);
    const double T = log_uniform(rng, 1e-5, 0.1);
    const double A = log_uniform(rng, 1e-5, 0.1);
    const double beta = (i % 2 == 0) ? 0.0 : log_uniform(rng, 1.0, 1e5);
    const NormalizedParams np(b, phi, 1e-6, d, 1e4, T, A, beta, 0.0);
    const SpectralAsymmetry asym = spectral_asymmetry(np);
    if (asym.diff <= 0.0) continue;
    ++cooled;
    const double ratio = (asym.S_plus + asym.S_minus) / asym.diff;
    worst = std::max(worst, rel_err(ratio, 2.0 * n_min(np).value + 1.0));
  }
  return {worst <= 1e-12 && cooled >= 3000,
          strf("%d cooling draws of 10000, worst rel err %.2e (tol 1e-12)", cooled, worst)};
}

Verdict check_6_flank_damping() {
  const StrongCoolingPoint sc;
  const ClassicalDynamics dyn = effective_dynamics(sc.specs, sc.op.ss);
  const double flank = gamma_opt_flank(sc.specs, sc.op.ss);
  const double e1 = rel_err(flank, dyn.Gamma_eff - sc.mech.Gamma());

  // same bridge at a second thermal time
  const PhotothermalSpec pt2(1e5, 5e-6);
  const DetunedOperatingPoint op2 =
      drive_for_detuning(sc.cav, sc.mech, pt2, 1e-6, 0.0, sc.cav.kappa());
  const SystemSpecs s2{sc.cav, sc.mech, pt2, op2.drive};
  const ClassicalDynamics dyn2 = effective_dynamics(s2, op2.ss);
  const double e1b = rel_err(gamma_opt_flank(s2, op2.ss), dyn2.Gamma_eff - sc.mech.Gamma());

  // fluctuation-response form of the optical damping vs the back-action form
  const NormalizedParams np(0.01, 1.0, 1.98e-5, 1.0, 1e6, 0.001, 0.01, 1e4, 0.0);
  const double kubo = gamma_opt_ratio_from_spectrum(np);
  const BackAction ba = backaction_shift_damping(np);
  const double e2 = rel_err(kubo, ba.gamma_eff_over_gamma - 1.0);
  return {e1 <= 1e-10 && e1b <= 1e-10 && e2 <= 5e-2,
          strf("classical bridge rel err %.2e, %.2e (tol 1e-10); response-form err %.2e "
               "(tol 5e-2)",
               e1, e1b, e2)};
}

Verdict check_7_monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();

  // (i) undriven thermal point: equipartition
  const CavitySpec cav(1e-2, 1064e-9, 0.001, 0.01, 1.0);
  const MechanicalSpec mech(1e-12, 628318.5307179587, 50.0);
  const PhotothermalSpec pt(1e4, 1e-4);
  const DriveSpec drive(0.0, 0.0, 300.0);
  const SystemSpecs s{cav, mech, pt, drive};
  const SteadyState ss = solve_steady_state(cav, mech, pt, drive).front();
  SimConfig sim{};
  sim.dt = 2.5e-7;
  sim.n_steps = 100000;
  sim.n_realizations = 128;
  sim.burn_in_steps = 2000;
  sim.seed = 777;
  const double an1 = classical_variance(s, ss).x2_classical;
  const VarianceEstimate est1 = simulate_classical(s, ss, sim);
  const double dev1 = std::abs(est1.var_x - an1);
  const bool ok1 = dev1 <= std::max(0.05 * an1, 3.0 * est1.stderr_var);

  // (ii) strongly cooled point, Gamma_eff / Gamma = 1e3
  const StrongCoolingPoint sc;
  const ClassicalDynamics dyn = effective_dynamics(sc.specs, sc.op.ss);
  const double ratio = dyn.Gamma_eff / sc.mech.Gamma();
  SimConfig sim2{};
  sim2.dt = 2.5e-8;
  sim2.n_steps = 720000;
  sim2.n_realizations = 160;
  sim2.burn_in_steps = 40000;
  sim2.seed = 20260816;
  const double an2 = classical_variance(sc.specs, sc.op.ss).x2_classical;
  const VarianceEstimate est2 = simulate_classical(sc.specs, sc.op.ss, sim2);
  const double dev2 = std::abs(est2.var_x - an2);
  const bool ok2 = dev2 <= std::max(0.05 * an2, 3.0 * est2.stderr_var);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool enough = sim.n_realizations >= 100 && sim2.n_realizations >= 100;
  return {ok1 && ok2 && enough && secs <= 300.0 && ratio > 900.0 && ratio < 1100.0,
          strf("thermal: %+.2f%% (%.2f sigma, 128 realizations); cooled Gamma_eff/Gamma=%.0f: "
               "%+.2f%% (%.2f sigma, 160 realizations); %.1f s (limit 300, tol max(5%%, 3 "
               "sigma))",
               100.0 * (est1.var_x - an1) / an1, dev1 / est1.stderr_var, ratio,
               100.0 * (est2.var_x - an2) / an2, dev2 / est2.stderr_var, secs)};
}

Verdict check_8_figures() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string dir = PHOTOCOOL_GOLDEN_DIR;

  const FigureOutput f1a = figure_1a();
  const FigureOutput f1b = figure_1b();
  const FigureOutput f2a = figure_2a();
  const FigureOutput f2b = figure_2b();
  const FigureOutput f3 = figure_3();

  // sideband asymmetry on the red flank
  const bool asym_ok = find_meta(f2a.csv, "S_minus") > find_meta(f2a.csv, "S_plus");

  // the delayed-force noise crosses under the pressure noise near beta*A
  double crossing = -1.0;
  for (const auto& row : f1a.csv.rows) {
    if (std::stod(row[1]) < std::stod(row[2])) {
      crossing = std::stod(row[0]);
      break;
    }
  }
  const double betaA = find_meta(f1a.csv, "beta") * find_meta(f1a.csv, "A");
  const bool crossing_ok = crossing > betaA / 3.0 && crossing < betaA * 3.0;

  // variance valley at phi = 1, reheating at long delays (d >= 100 beta A)
  double vmin = std::numeric_limits<double>::infinity(), v_dmax = 0.0;
  for (const auto& row : f2b.csv.rows) {
    if (std::abs(std::stod(row[0]) - 1.0) > 1e-9) continue;
    const double dval = std::stod(row[1]);
    const double v = std::stod(row[2]);
    vmin = std::min(vmin, v);
    if (std::abs(dval - 1e4) < 1e-4) v_dmax = v;
  }
  const bool valley_ok = vmin <= 1.2 && v_dmax >= 1.1 * vmin;

  // occupancy floor below one for beta A = 100
  double floor100 = std::numeric_limits<double>::infinity();
  for (const auto& row : f3.csv.rows) floor100 = std::min(floor100, std::stod(row[2]));
  const bool floor_ok = floor100 < 1.0;

  bool golden_ok = true;
  std::string drift;
  for (const FigureOutput* f : {&f1a, &f1b, &f2a, &f2b, &f3}) {
    if (f->csv.to_string() != read_file(dir + "/" + f->stem + ".csv")) {
      golden_ok = false;
      drift += " " + f->stem;
    }
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {asym_ok && crossing_ok && valley_ok && floor_ok && golden_ok && secs <= 60.0,
          strf("S_- > S_+ %s; noise crossing at %.3g (beta A = %g, factor-3 band); valley "
               "min %.4g with reheat %.4g; floor %.4g < 1; snapshots %s; %.1f s (limit 60)",
               asym_ok ? "yes" : "NO", crossing, betaA, vmin, v_dmax, floor100,
               golden_ok ? "match" : ("DRIFT:" + drift).c_str(), secs)};
}

Verdict check_9_variance_closure() {
  const NormalizedParams np(0.01, 1.0, 1.98e-5, 1.0, 1e6, 0.001, 0.01, 1e4, 0.0);
  const BackAction ba = backaction_shift_damping(np);
  if (ba.gamma_eff_over_gamma < 999.0 || np.Q < 1e5)
    return {false, "operating point left the deep-cooling regime"};
  const double full = variance_full(np);
  const double peaked = variance_strong_cooling(np).deltaX2;
  const double err = rel_err(peaked, full);
  return {err <= 2e-2, strf("Gamma_eff/Gamma = %.1f, Q = %g, rel err %.2e (tol 2e-2)",
                            ba.gamma_eff_over_gamma, np.Q, err)};
}

Verdict check_10_steady_state_roots() {
  const CavitySpec cav(1e-2, 1064e-9, 0.001, 0.01, 1.0);
  const MechanicalSpec mech(1e-12, 628318.5307179587, 1e5);
  const PhotothermalSpec pt(1e4, 1e-4);

  const DriveSpec bistable(1.27074090e-4, 247436006.9, 300.0);
  const auto roots = solve_steady_state(cav, mech, pt, bistable);
  if (roots.size() != 3)
    return {false, strf("bistable drive produced %zu roots (want 3)", roots.size())};
  const bool pattern = roots[0].stable && !roots[1].stable && roots[2].stable;

  double worst = 0.0;
  for (const auto& r : roots)
    worst = std::max(worst, steady_state_residual(r, cav, mech, pt, bistable));

  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double kappa = cav.kappa();
  for (int i = 0; i < 300; ++i) {
    const double beta = (i % 2 == 0) ? 0.0 : log_uniform(rng, 1.0, 1e5);
    const PhotothermalSpec pti(beta, log_uniform(rng, 1e-7, 1e-2));
    const DriveSpec di(log_uniform(rng, 1e-9, 1e-3), (2.0 * u(rng) - 1.0) * 3.0 * kappa, 300.0);
    for (const auto& r : solve_steady_state(cav, mech, pti, di))
      worst = std::max(worst, steady_state_residual(r, cav, mech, pti, di));
  }
  return {pattern && worst <= 1e-10,
          strf("3 roots, outer branches stable: %s; worst residual %.2e over bistable + 300 "
               "random drives (tol 1e-10)",
               pattern ? "yes" : "NO", worst)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    Verdict (*fn)();
  };
  const Entry entries[] = {
      {1, "absorbed-power slope on the red flank equals (8 F / lambda) x P_abs",
       check_1_absorbed_slope},
      {2, "deep-cooling variance at Delta = kappa reduces to beta (T+A) hbar / (8 tau_th)",
       check_2_deep_cooling_variance},
      {3, "pressure-only occupancy floor matches its closed form", check_3_pressure_only_floor},
      {4, "resonant drive: symmetric spectrum, zero shift, bare damping",
       check_4_resonant_symmetry},
      {5, "sideband asymmetry encodes the floor: (S+ + S-)/(S- - S+) = 2 n_min + 1",
       check_5_detailed_balance},
      {6, "flank damping: quantum equals classical; response form within 5%",
       check_6_flank_damping},
      {7, "Monte-Carlo variance matches analytics at thermal and cooled points",
       check_7_monte_carlo},
      {8, "figures reproduce the qualitative physics and archived snapshots", check_8_figures},
      {9, "peaked-response variance matches the full spectral integral",
       check_9_variance_closure},
      {10, "steady-state roots converge; bistability shows 3 roots, outer branches stable",
       check_10_steady_state_roots},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Verdict v;
    try {
      v = e.fn();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    if (!v.ok) ++failures;
    std::printf("[%s] %2d %s -- %s\n", v.ok ? "PASS" : "FAIL", e.id, e.label, v.detail.c_str());
  }
  std::printf("\n%d/10 checks passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
