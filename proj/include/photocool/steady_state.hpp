#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "photocool/constants.hpp"
#include "photocool/params.hpp"

namespace photocool {

// Static cavity retuning per intracavity photon [rad/s]; the bolometric
// contribution rides on top of radiation pressure through (1 + beta A).
inline double nonlinear_retuning_coefficient(const CavitySpec& cavity, const MechanicalSpec& mech,
                                             const PhotothermalSpec& pt) {
  const double k = cavity.k();
  const double tau0 = cavity.tau0();
  return hbar * k * k * (1.0 + pt.beta * cavity.A) / (mech.K() * tau0 * tau0);
}

// Pump strength g such that alpha_sq * (kappa^2 + Delta^2) = g  [photons / s^2].
inline double pump_strength(const CavitySpec& cavity, const DriveSpec& drive) {
  return (cavity.T / cavity.tau0()) * drive.P_inc / (hbar * cavity.omega_L());
}

namespace detail {

// Real roots of x^3 + p x^2 + q x + r = 0, ascending. No polishing here.
inline std::vector<double> real_cubic_roots(double p, double q, double r) {
  const double third = 1.0 / 3.0;
  const double a = q - p * p * third;                                  // depressed: t^3 + a t + b
  const double b = 2.0 * p * p * p / 27.0 - p * q * third + r;
  const double shift = -p * third;
  std::vector<double> roots;
  const double disc = 0.25 * b * b + a * a * a / 27.0;
  if (disc > 0.0) {  // one real root
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * b + s);
    const double v = std::cbrt(-0.5 * b - s);
    roots.push_back(u + v + shift);
  } else {  // three real roots (trig form)
    const double m = std::sqrt(std::max(-a * third, 0.0));
    if (m == 0.0) {
      roots.push_back(std::cbrt(-b) + shift);
    } else {
      double arg = 3.0 * b / (2.0 * a * m);
      arg = std::clamp(arg, -1.0, 1.0);
      const double theta = std::acos(arg) * third;
      for (int k = 0; k < 3; ++k)
        roots.push_back(2.0 * m * std::cos(theta - 2.0 * pi * k * third) + shift);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

// Cavity response at mean photon number u: f(u) = u (kappa^2 + (delta_c - c1 u)^2).
// Steady states solve f(u) = g; the slope criterion f'(u) > 0 marks stability.
inline double cavity_response(double u, double kappa, double delta_c, double c1) {
  const double s = delta_c - c1 * u;
  return u * (kappa * kappa + s * s);
}

inline double cavity_response_slope(double u, double kappa, double delta_c, double c1) {
  const double s = delta_c - c1 * u;
  return kappa * kappa + s * s - 2.0 * c1 * u * s;
}

inline SteadyState make_steady_state(double u, const CavitySpec& cavity, const MechanicalSpec& mech,
                                     const PhotothermalSpec& pt, double delta_c) {
  const double c1 = nonlinear_retuning_coefficient(cavity, mech, pt);
  const double Delta_nl = c1 * u;
  const double x_mean = std::sqrt(2.0) * hbar * cavity.k() / (mech.K() * cavity.tau0()) *
                        (1.0 + pt.beta * cavity.A) * u;
  const bool stable = cavity_response_slope(u, cavity.kappa(), delta_c, c1) > 0.0;
  return SteadyState{u, delta_c - Delta_nl, Delta_nl, x_mean, stable};
}

// All self-consistent operating points, sorted by photon number ascending.
// One or three branches; the middle branch of a bistable triple is unstable.
inline std::vector<SteadyState> solve_steady_state(const CavitySpec& cavity,
                                                   const MechanicalSpec& mech,
                                                   const PhotothermalSpec& pt,
                                                   const DriveSpec& drive) {
  const double kappa = cavity.kappa();
  const double c1 = nonlinear_retuning_coefficient(cavity, mech, pt);
  const double g = pump_strength(cavity, drive);
  const double delta_c = drive.delta_c;

  if (g == 0.0) return {make_steady_state(0.0, cavity, mech, pt, delta_c)};

  // monic cubic in u: u^3 - (2 delta_c / c1) u^2 + ((kappa^2+delta_c^2)/c1^2) u - g/c1^2 = 0
  const double p = -2.0 * delta_c / c1;
  const double q = (kappa * kappa + delta_c * delta_c) / (c1 * c1);
  const double r = -g / (c1 * c1);
  std::vector<double> roots = detail::real_cubic_roots(p, q, r);

  // Newton polish in the physical residual, then drop duplicates.
  for (double& u : roots) {
    for (int it = 0; it < 8; ++it) {
      const double f = cavity_response(u, kappa, delta_c, c1) - g;
      const double fp = cavity_response_slope(u, kappa, delta_c, c1);
      if (fp == 0.0) break;
      const double step = f / fp;
      u -= step;
      if (std::abs(step) <= 1e-16 * std::abs(u)) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double u : roots) {
    if (unique.empty() || std::abs(u - unique.back()) > 1e-8 * std::max(std::abs(u), std::abs(unique.back())))
      unique.push_back(u);
  }

  std::vector<SteadyState> out;
  for (double u : unique) out.push_back(make_steady_state(u, cavity, mech, pt, delta_c));
  return out;
}

// Relative self-consistency residual of a returned branch.
inline double steady_state_residual(const SteadyState& ss, const CavitySpec& cavity,
                                    const MechanicalSpec& mech, const PhotothermalSpec& pt,
                                    const DriveSpec& drive) {
  const double g = pump_strength(cavity, drive);
  const double f = cavity_response(ss.alpha_sq, cavity.kappa(), drive.delta_c,
                                   nonlinear_retuning_coefficient(cavity, mech, pt));
  if (g == 0.0) return std::abs(f);
  return std::abs(f - g) / g;
}

// Index of the default branch (lowest photon number that is stable), or -1.
inline int default_branch(const std::vector<SteadyState>& branches) {
  for (std::size_t i = 0; i < branches.size(); ++i)
    if (branches[i].stable) return static_cast<int>(i);
  return -1;
}

// A concrete SI realization of a dimensionless operating point.
struct Embodiment {
  SystemSpecs specs;
  SteadyState ss;
};

// Build an SI system whose normalized parameters reproduce np. The scales
// kappa, m, lambda are free choices (the dimensionless physics cannot fix
// them); defaults give a cm-scale cavity with a picogram oscillator. The
// bolometric back-mirror weight R is set to 1 so the classical and the
// dimensionless couplings coincide.
inline Embodiment denormalize(const NormalizedParams& np, double kappa = 1e8, double m = 1e-12,
                              double lambda = 1064e-9) {
  detail::require(std::isfinite(kappa) && kappa > 0.0, "denormalize: kappa must be positive");
  detail::require(std::isfinite(m) && m > 0.0, "denormalize: m must be positive");
  detail::require(std::isfinite(lambda) && lambda > 0.0, "denormalize: lambda must be positive");

  const double tau0 = (np.T + np.A) / (2.0 * kappa);
  CavitySpec cavity(0.5 * c_light * tau0, lambda, np.T, np.A, 1.0);
  const double omega0 = np.b * kappa;
  MechanicalSpec mech(m, omega0, np.Q);
  PhotothermalSpec pt(np.beta, np.d / omega0);

  const double k = cavity.k();
  const double alpha_sq = np.phi_nl * mech.K() * tau0 * tau0 * kappa / (hbar * k * k);
  const double Delta = np.phi * kappa;
  const double c1 = nonlinear_retuning_coefficient(cavity, mech, pt);
  const double delta_c = Delta + c1 * alpha_sq;
  const double P_inc =
      alpha_sq * (kappa * kappa + Delta * Delta) * tau0 * hbar * cavity.omega_L() / np.T;
  const double T_env = np.n_i > 0.0 ? bath_temperature(np.n_i, omega0) : 0.0;
  DriveSpec drive(P_inc, delta_c, T_env);

  return Embodiment{SystemSpecs{cavity, mech, pt, drive},
                    make_steady_state(alpha_sq, cavity, mech, pt, delta_c)};
}

struct DetunedOperatingPoint {
  DriveSpec drive;
  SteadyState ss;
};

// Choose the empty-cavity detuning delta_c so the dressed detuning equals
// Delta exactly at the given power; avoids hand-tuning against the static
// retuning. The returned state solves the cubic by construction.
inline DetunedOperatingPoint drive_for_detuning(const CavitySpec& cavity, const MechanicalSpec& mech,
                                                const PhotothermalSpec& pt, double P_inc,
                                                double T_env, double Delta) {
  DriveSpec probe(P_inc, 0.0, T_env);
  const double g = pump_strength(cavity, probe);
  const double kappa = cavity.kappa();
  const double u = g / (kappa * kappa + Delta * Delta);
  const double c1 = nonlinear_retuning_coefficient(cavity, mech, pt);
  DriveSpec drive(P_inc, Delta + c1 * u, T_env);
  return DetunedOperatingPoint{drive, make_steady_state(u, cavity, mech, pt, drive.delta_c)};
}

}  // namespace photocool
