#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "photocool/constants.hpp"
#include "photocool/params.hpp"
#include "photocool/steady_state.hpp"

namespace photocool {

// Lorentzian intracavity power for a mirror displaced by x from the reference
// position; Delta is the detuning the displacement is measured against.
inline double circulating_power_at(double x, const CavitySpec& cav, double P_inc, double Delta) {
  const double tau0 = cav.tau0();
  const double kappa = cav.kappa();
  const double shift = -Delta + 2.0 * cav.omega_L() * x / cav.L0;
  return (cav.T / (tau0 * tau0)) * P_inc / (kappa * kappa + shift * shift);
}

inline double circulating_power(double x, const CavitySpec& cav, const DriveSpec& drive) {
  return circulating_power_at(x, cav, drive.P_inc, drive.delta_c);
}

// Displacement measured about a self-consistent operating point: the dressed
// detuning applies.
inline double circulating_power(double x, const CavitySpec& cav, const DriveSpec& drive,
                                const SteadyState& ss) {
  return circulating_power_at(x, cav, drive.P_inc, ss.Delta);
}

struct AbsorbedPowerLinearization {
  double P_abs0;    // absorbed power at the operating point [W]
  double dPabs_dx;  // gradient upon mirror motion [W/m]
};

inline AbsorbedPowerLinearization absorbed_power_linearized_at(const CavitySpec& cav,
                                                               double P_inc, double Delta) {
  const double tau0 = cav.tau0();
  const double kappa = cav.kappa();
  const double lor = kappa * kappa + Delta * Delta;
  const double P_abs0 = (cav.T * cav.A / (tau0 * tau0)) * P_inc / lor;
  const double dPabs_dx = P_abs0 * 4.0 * Delta * cav.omega_L() / (cav.L0 * lor);
  return {P_abs0, dPabs_dx};
}

inline AbsorbedPowerLinearization absorbed_power_linearized(const CavitySpec& cav,
                                                            const DriveSpec& drive) {
  return absorbed_power_linearized_at(cav, drive.P_inc, drive.delta_c);
}

inline AbsorbedPowerLinearization absorbed_power_linearized(const CavitySpec& cav,
                                                            const DriveSpec& drive,
                                                            const SteadyState& ss) {
  return absorbed_power_linearized_at(cav, drive.P_inc, ss.Delta);
}

// Single-pole thermal response 1/(1 + i omega tau_th) in the f(omega) =
// integral f(t) exp(-i omega t) dt convention.
inline std::complex<double> thermal_kernel(double omega, double tau_th) {
  return 1.0 / std::complex<double>(1.0, omega * tau_th);
}

struct ClassicalDynamics {
  double omega_eff;         // effective resonance [rad/s]; NaN if statically unstable
  double omega_eff_sq;      // signed square, kept for diagnostics [rad^2/s^2]
  double Gamma_eff;         // effective damping [rad/s]
  double K_eff;             // m * omega_eff^2 [N/m]
  double dPabs_dx;          // absorbed-power gradient at the operating point [W/m]
  double P_abs0;            // absorbed power [W]
  double P_circ0;           // circulating power [W]
  bool statically_stable;   // omega_eff^2 > 0
};

// Linearized spring softening and cold damping from the lagged bolometric
// force. A statically unstable point is flagged, not thrown.
inline ClassicalDynamics effective_dynamics(const SystemSpecs& s, const SteadyState& ss) {
  const CavitySpec& cav = s.cavity;
  const double omega0 = s.mech.omega0;
  const double tau = s.pt.tau_th;
  const double d2 = omega0 * tau * omega0 * tau;
  const double P_circ0 = hbar * cav.omega_L() * ss.alpha_sq / cav.tau0();
  const AbsorbedPowerLinearization lin =
      absorbed_power_linearized_at(cav, s.drive.P_inc, ss.Delta);
  const double recoil = 2.0 * cav.R / c_light;
  const double coupling = s.pt.beta * recoil * lin.dPabs_dx / s.mech.K();
  const double omega_eff_sq = omega0 * omega0 * (1.0 - coupling / (1.0 + d2));
  const double Gamma_eff =
      s.mech.Gamma() * (1.0 + s.mech.Q * coupling * omega0 * tau / (1.0 + d2));
  const bool ok = omega_eff_sq > 0.0;
  return ClassicalDynamics{ok ? std::sqrt(omega_eff_sq) : std::nan(""),
                           omega_eff_sq,
                           Gamma_eff,
                           s.mech.m * omega_eff_sq,
                           lin.dPabs_dx,
                           lin.P_abs0,
                           P_circ0,
                           ok};
}

inline bool strong_cooling_regime(const ClassicalDynamics& dyn, const MechanicalSpec& mech) {
  if (!dyn.statically_stable) return false;
  return dyn.Gamma_eff / mech.Gamma() >= 100.0 &&
         std::abs(dyn.omega_eff - mech.omega0) / mech.omega0 <= 0.1;
}

// Two-sided circulating-power noise density [W^2 s]: a sideband pair of
// cavity Lorentzians around the dressed detuning.
inline double circ_power_psd(double omega, const CavitySpec& cav, const DriveSpec&,
                             const SteadyState& ss) {
  const double kappa = cav.kappa();
  const double P_circ0 = hbar * cav.omega_L() * ss.alpha_sq / cav.tau0();
  const double um = (omega - ss.Delta) / kappa;
  const double up = (omega + ss.Delta) / kappa;
  return (cav.finesse() / pi) * hbar * cav.omega_L() * P_circ0 *
         (1.0 / (1.0 + um * um) + 1.0 / (1.0 + up * up));
}

// Poissonian absorbed-power noise: white two-sided density [W^2 s].
inline double absorbed_shot_psd(const CavitySpec& cav, const SteadyState& ss) {
  const double P_abs0 = cav.A * hbar * cav.omega_L() * ss.alpha_sq / cav.tau0();
  return hbar * cav.omega_L() * P_abs0;
}

// Two-sided displacement noise density [m^2 s]: Langevin bath plus the
// low-pass-filtered bolometric shot noise, seen through the effective
// mechanical response.
inline double position_psd_classical(double omega, const SystemSpecs& s, const SteadyState& ss) {
  const ClassicalDynamics dyn = effective_dynamics(s, ss);
  const double m = s.mech.m;
  const double S_langevin = 2.0 * k_B * s.drive.T_env * m * s.mech.Gamma();
  const double recoil = 2.0 * s.cavity.R / c_light;
  const double wt = omega * s.pt.tau_th;
  const double S_shot = s.pt.beta * s.pt.beta * recoil * recoil / (1.0 + wt * wt) *
                        absorbed_shot_psd(s.cavity, ss);
  const double dw = dyn.omega_eff_sq - omega * omega;
  const double resp = dw * dw + dyn.Gamma_eff * dyn.Gamma_eff * omega * omega;
  return (S_langevin + S_shot) / (m * m * resp);
}

struct ClassicalVariance {
  double x2_classical;            // driven variance [m^2]
  double x2_total;                // with the zero-point floor added [m^2]
  double T_eff;                   // effective temperature [K]
  double normalized_temperature;  // 2 m omega_eff^2 <x^2> / (hbar omega_eff), >= 1
};

// Peaked-response variance: flat-noise equivalents evaluated at the effective
// resonance, divided by the effective damping.
inline ClassicalVariance classical_variance(const SystemSpecs& s, const SteadyState& ss) {
  const ClassicalDynamics dyn = effective_dynamics(s, ss);
  if (!dyn.statically_stable)
    throw std::domain_error("classical_variance: statically unstable operating point (omega_eff^2 <= 0)");
  if (dyn.Gamma_eff <= 0.0)
    throw std::domain_error("classical_variance: dynamically unstable operating point (Gamma_eff <= 0)");
  const double m = s.mech.m;
  const double recoil = 2.0 * s.cavity.R / c_light;
  const double wt = dyn.omega_eff * s.pt.tau_th;
  const double shot = 0.5 / m * s.pt.beta * s.pt.beta * recoil * recoil / (1.0 + wt * wt) *
                      s.cavity.A * hbar * s.cavity.omega_L() * dyn.P_circ0;
  const double x2_classical =
      (s.mech.Gamma() * k_B * s.drive.T_env + shot) / (dyn.Gamma_eff * m * dyn.omega_eff_sq);
  const double x2_total = x2_classical + hbar / (2.0 * m * dyn.omega_eff);
  const double T_eff = m * dyn.omega_eff_sq * x2_total / k_B;
  const double n_temp = 2.0 * m * dyn.omega_eff_sq * x2_total / (hbar * dyn.omega_eff);
  return ClassicalVariance{x2_classical, x2_total, T_eff, n_temp};
}

// Shot-noise-limited spring energy K_eff <x^2>_cl [J] in the strongly cooled
// regime; diverges at zero detuning, where there is no cooling to speak of.
inline double strong_cooling_variance(const SystemSpecs& s, const SteadyState& ss) {
  if (ss.Delta == 0.0)
    throw std::domain_error("strong_cooling_variance: zero detuning has no cooling limit");
  const double kappa = s.cavity.kappa();
  return s.pt.beta * s.cavity.R * hbar / s.pt.tau_th * s.cavity.tau0() *
         (kappa * kappa + ss.Delta * ss.Delta) / (8.0 * ss.Delta);
}

}  // namespace photocool
