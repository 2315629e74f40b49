#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "photocool/classical.hpp"
#include "photocool/config.hpp"
#include "photocool/csv.hpp"
#include "photocool/quantum.hpp"
#include "photocool/steady_state.hpp"
#include "photocool/svg.hpp"

namespace photocool {

struct FigureOutput {
  std::string stem;  // file stem, e.g. "fig2a"
  Csv csv;
  std::string svg;
};

namespace detail {

// Shared cavity embodiment for the classical figures. Only dimensionless
// combinations show up in the plotted quantities, so these SI choices are a
// carrier, not an assumption; they are echoed in the CSV metadata.
struct ClassicalFigureSetup {
  CavitySpec cavity{1e-2, 1064e-9, 0.001, 0.01, 1.0};
  double beta = 1e4;
  double m = 1e-12;
  double Q = 1e5;
};

}  // namespace detail

// Photothermal force noise (low-pass filtered absorbed-power shot noise)
// against the radiation-pressure force-noise maximum at omega = Delta, on the
// red cavity flank Delta = kappa. The ratio collapses onto a single curve in
// omega * tau_th; a companion column shows the circulating-power sideband pair
// for kappa * tau_th = 1e4.
inline FigureOutput figure_1a(int resolution = 0) {
  const int n = resolution > 0 ? resolution : 400;
  detail::ClassicalFigureSetup fs;
  const double kappa = fs.cavity.kappa();
  const double tau_th = 1e4 / kappa;
  const MechanicalSpec mech(fs.m, 2.0 * pi * 1e5, fs.Q);
  const PhotothermalSpec pt(fs.beta, tau_th);
  const DetunedOperatingPoint op =
      drive_for_detuning(fs.cavity, mech, pt, 1e-6, 0.0, kappa);

  const double recoil_pt = fs.beta * 2.0 * fs.cavity.R / c_light;
  const double S_abs = absorbed_shot_psd(fs.cavity, op.ss);
  const double rp_force_max =
      (2.0 / c_light) * (2.0 / c_light) * circ_power_psd(kappa, fs.cavity, op.drive, op.ss);

  Csv csv;
  csv.meta("figure", "1a");
  csv.meta("A", fs.cavity.A);
  csv.meta("T", fs.cavity.T);
  csv.meta("R", fs.cavity.R);
  csv.meta("beta", fs.beta);
  csv.meta("Delta_over_kappa", 1.0);
  csv.meta("kappa_tau_th", kappa * tau_th);
  csv.meta("normalization", "photothermal force PSD over radiation-pressure PSD maximum");
  csv.columns = {"omega_tau_th", "pt_over_rp_max", "rp_relative"};

  svg::Series pt_curve{"photothermal", {}, {}};
  svg::Series rp_curve{"radiation pressure", {}, {}};
  for (double x : axis_grid(0.1, 1e4, n, true)) {
    const double omega = x / tau_th;
    const double h2 = std::norm(thermal_kernel(omega, tau_th));
    const double s_pt = recoil_pt * recoil_pt * h2 * S_abs;
    const double rp_rel =
        (2.0 / c_light) * (2.0 / c_light) * circ_power_psd(omega, fs.cavity, op.drive, op.ss) /
        rp_force_max;
    csv.add_row({x, s_pt / rp_force_max, rp_rel});
    pt_curve.x.push_back(x);
    pt_curve.y.push_back(s_pt / rp_force_max);
    rp_curve.x.push_back(x);
    rp_curve.y.push_back(rp_rel);
  }
  const std::string svg_doc = svg::line_chart(
      "Photothermal vs radiation-pressure force noise", {"omega tau_th", true},
      {"force PSD / RP maximum", true}, {pt_curve, rp_curve});
  return FigureOutput{"fig1a", std::move(csv), svg_doc};
}

// Residual normalized temperature 2 K <x^2> / (hbar omega0) in the strongly
// cooled limit, over detuning and the photothermal delay d = omega0 tau_th,
// with tau_th = 1 ms. Includes the zero-point floor, so the surface tends to 1.
inline FigureOutput figure_1b(int resolution = 0) {
  const int n_delta = resolution > 0 ? resolution : 40;
  const int n_d = resolution > 0 ? resolution : 41;
  detail::ClassicalFigureSetup fs;
  const double tau_th = 1e-3;
  const PhotothermalSpec pt(fs.beta, tau_th);
  const std::vector<double> deltas = axis_grid(0.1, 4.0, n_delta, false);
  const std::vector<double> ds = axis_grid(1.0, 1e4, n_d, true);
  const double kappa = fs.cavity.kappa();

  Csv csv;
  csv.meta("figure", "1b");
  csv.meta("A", fs.cavity.A);
  csv.meta("T", fs.cavity.T);
  csv.meta("R", fs.cavity.R);
  csv.meta("beta", fs.beta);
  csv.meta("tau_th", tau_th);
  csv.meta("quantity", "2*K*<x^2>/(hbar*omega0) with zero-point floor");
  csv.columns = {"Delta_over_kappa", "omega0_tau_th", "n_T_hat"};

  std::vector<std::vector<double>> z(ds.size(), std::vector<double>(deltas.size()));
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      const double omega0 = ds[j] / tau_th;
      const MechanicalSpec mech(fs.m, omega0, fs.Q);
      const DetunedOperatingPoint op =
          drive_for_detuning(fs.cavity, mech, pt, 1e-6, 0.0, deltas[i] * kappa);
      const SystemSpecs specs{fs.cavity, mech, pt, op.drive};
      const double J = strong_cooling_variance(specs, op.ss);
      const double nhat = 1.0 + 2.0 * J / (hbar * omega0);
      csv.add_row({deltas[i], ds[j], nhat});
      z[j][i] = nhat;
    }
  }
  const std::string svg_doc =
      svg::heatmap("Residual normalized temperature, deep-cooling limit",
                   {"Delta / kappa", false}, {"omega0 tau_th", true}, deltas, ds, z, true);
  return FigureOutput{"fig1b", std::move(csv), svg_doc};
}

// Optical force noise spectrum in zero-point-normalized units at the red
// flank, showing the photothermal corner, the asymmetric mechanical sidebands
// at Omega = +-1, and the cavity sidebands.
inline FigureOutput figure_2a(int resolution = 0) {
  const int n = resolution > 0 ? resolution : 1201;
  const NormalizedParams np(0.01, 1.0, 0.0, 1.0, 1e5, 0.001, 0.01, 1e4, 0.0);
  const SpectralAsymmetry asym = spectral_asymmetry(np);

  Csv csv;
  csv.meta("figure", "2a");
  csv.meta("b", np.b);
  csv.meta("phi", np.phi);
  csv.meta("d", np.d);
  csv.meta("beta", np.beta);
  csv.meta("A", np.A);
  csv.meta("T", np.T);
  csv.meta("S_plus", asym.S_plus);
  csv.meta("S_minus", asym.S_minus);
  csv.columns = {"Omega", "S_fopt"};

  svg::Series curve{"S_fopt", {}, {}};
  for (double W : axis_grid(-300.0, 300.0, n, false)) {
    const double s = optical_force_spectrum(W, np);
    csv.add_row({W, s});
    curve.x.push_back(W);
    curve.y.push_back(s);
  }
  const std::string svg_doc = svg::line_chart("Optical force noise spectrum", {"Omega", false},
                                              {"S_fopt(Omega)", true}, {curve});
  return FigureOutput{"fig2a", std::move(csv), svg_doc};
}

// Steady-state position variance (zero-point units) over detuning phi and
// photothermal delay d in the peaked-response limit.
inline FigureOutput figure_2b(int resolution = 0) {
  const int n_phi = resolution > 0 ? resolution : 25;
  const int n_d = resolution > 0 ? resolution : 41;
  const double b = 0.01, Q = 1e5, phi_nl = 3e-6, beta = 1e4, A = 0.01, T = 0.001, n_i = 0.0;
  const std::vector<double> phis = axis_grid(0.1, 10.0, n_phi, true);
  const std::vector<double> ds = axis_grid(1.0, 1e4, n_d, true);

  Csv csv;
  csv.meta("figure", "2b");
  csv.meta("b", b);
  csv.meta("Q", Q);
  csv.meta("phi_nl", phi_nl);
  csv.meta("beta", beta);
  csv.meta("A", A);
  csv.meta("T", T);
  csv.meta("n_i", n_i);
  csv.columns = {"phi", "d", "deltaX2"};

  std::vector<std::vector<double>> z(ds.size(), std::vector<double>(phis.size()));
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      const NormalizedParams np(b, phis[i], phi_nl, ds[j], Q, T, A, beta, n_i);
      double v;
      try {
        v = variance_strong_cooling(np).deltaX2;
      } catch (const std::domain_error&) {
        v = std::numeric_limits<double>::infinity();
      }
      csv.add_row({phis[i], ds[j], v});
      z[j][i] = v;
    }
  }
  const std::string svg_doc =
      svg::heatmap("Position variance in zero-point units", {"phi = Delta / kappa", true},
                   {"d = omega0 tau_th", true}, phis, ds, z, true);
  return FigureOutput{"fig2b", std::move(csv), svg_doc};
}

// Detailed-balance occupancy floor against the photothermal delay for a set
// of photothermal strengths beta*A, at phi = 1, b = 0.1.
inline FigureOutput figure_3(int resolution = 0) {
  const int n = resolution > 0 ? resolution : 121;
  const double b = 0.1, phi = 1.0, Q = 1e5, phi_nl = 1e-6, A = 0.01, T = 0.001, n_i = 0.0;
  const std::vector<double> betaAs = {10.0, 100.0, 1000.0};
  const std::vector<double> ds = axis_grid(0.1, 1e5, n, true);

  Csv csv;
  csv.meta("figure", "3");
  csv.meta("b", b);
  csv.meta("phi", phi);
  csv.meta("A", A);
  csv.meta("T", T);
  csv.meta("curves", "beta*A = 10, 100, 1000 at fixed A, varying beta");
  csv.columns = {"d", "n_min_bA10", "n_min_bA100", "n_min_bA1000"};

  std::vector<svg::Series> series;
  for (double bA : betaAs)
    series.push_back({"beta A = " + format_double(bA), {}, {}});
  for (double d : ds) {
    std::vector<double> row{d};
    for (std::size_t k = 0; k < betaAs.size(); ++k) {
      const NormalizedParams np(b, phi, phi_nl, d, Q, T, A, betaAs[k] / A, n_i);
      const double v = n_min(np).value;
      row.push_back(v);
      series[k].x.push_back(d);
      series[k].y.push_back(v);
    }
    csv.add_row(row);
  }
  const std::string svg_doc = svg::line_chart("Occupancy floor vs photothermal delay",
                                              {"d = omega0 tau_th", true}, {"n_min", true}, series);
  return FigureOutput{"fig3", std::move(csv), svg_doc};
}

inline FigureOutput make_figure(const FigureSpec& spec) {
  if (spec.id == "1a") return figure_1a(spec.resolution);
  if (spec.id == "1b") return figure_1b(spec.resolution);
  if (spec.id == "2a") return figure_2a(spec.resolution);
  if (spec.id == "2b") return figure_2b(spec.resolution);
  if (spec.id == "3") return figure_3(spec.resolution);
  throw ConfigError("unknown figure id '" + spec.id + "'");
}

}  // namespace photocool
