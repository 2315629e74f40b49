#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "photocool/classical.hpp"
#include "photocool/constants.hpp"
#include "photocool/params.hpp"
#include "photocool/quadrature.hpp"
#include "photocool/steady_state.hpp"

namespace photocool {

// Dimensionless two-sided noise spectrum of the total optical force (radiation
// pressure plus lagged bolometric force) at signed normalized frequency
// Omega = omega/omega0. Omega = +1 is the emission side: net cooling requires
// S(-1) > S(+1).
inline double optical_force_spectrum(double Omega, const NormalizedParams& np) {
  const std::complex<double> I(0.0, 1.0);
  const double bw = np.b * Omega;
  const double den_half = 1.0 - bw * bw + np.phi * np.phi;
  const double den = den_half * den_half + 4.0 * bw * bw;
  const std::complex<double> lag = 1.0 / (1.0 + I * Omega * np.d);
  const double w = np.T + np.A;
  const double transmission =
      (2.0 * np.T / w) * std::norm(1.0 + np.beta * np.A * lag) *
      (1.0 + np.phi * np.phi + bw * bw - 2.0 * bw * np.phi);
  const std::complex<double> inner =
      1.0 + 0.5 * np.beta * w * lag * ((np.A - np.T) / w - I * np.phi - I * bw);
  const double absorption =
      (2.0 * np.A / w) * std::norm((1.0 + I * bw - I * np.phi) * inner);
  return (transmission + absorption) / den;
}

// Emission/absorption sidebands of the force spectrum, computed once so
// identities relating them share the same floating-point source.
struct SpectralAsymmetry {
  double S_plus;   // S(+1), emission side
  double S_minus;  // S(-1), absorption side
  double diff;     // S(-1) - S(+1); positive means net cooling
};

inline SpectralAsymmetry spectral_asymmetry(const NormalizedParams& np) {
  const double sp = optical_force_spectrum(1.0, np);
  const double sm = optical_force_spectrum(-1.0, np);
  return {sp, sm, sm - sp};
}

struct BackAction {
  double delta_omega;          // normalized resonance shift of the Omega^2 term
  double gamma_eff_over_gamma; // Gamma_eff / Gamma
  double gamma_opt_over_gamma; // Gamma_opt / Gamma = ratio - 1
};

// Dynamic back-action of the retarded optical force, evaluated at the
// mechanical resonance (peaked response). Both outputs carry an overall
// factor phi * phi_nl: no detuning or no drive means no back-action.
inline BackAction backaction_shift_damping(const NormalizedParams& np) {
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> numer =
      1.0 + np.beta * np.A / (1.0 + I * np.d);
  const std::complex<double> denom =
      1.0 + np.phi * np.phi - np.b * np.b + 2.0 * I * np.b;
  const std::complex<double> G = 2.0 * np.phi * np.phi_nl * numer / denom;
  const double delta_omega = -G.real();
  const double gamma_opt_ratio = -np.Q * G.imag();
  return BackAction{delta_omega, 1.0 + gamma_opt_ratio, gamma_opt_ratio};
}

struct NminResult {
  double value;  // +inf when there is no net cooling
  bool cooling;
};

// Detailed-balance floor on the phonon occupancy: n_min = S(+1)/(S(-1)-S(+1)).
inline NminResult n_min(const NormalizedParams& np) {
  const SpectralAsymmetry a = spectral_asymmetry(np);
  if (!(a.diff > 0.0)) return {std::numeric_limits<double>::infinity(), false};
  return {a.S_plus / a.diff, true};
}

// Kubo-form optomechanical damping from the spectral asymmetry, as a ratio to
// the intrinsic damping. The dimensionless prefactor phi_nl Q / 2 converts the
// normalized spectrum to the zero-point-normalized force units.
inline double gamma_opt_ratio_from_spectrum(const NormalizedParams& np) {
  const SpectralAsymmetry a = spectral_asymmetry(np);
  return 0.5 * np.phi_nl * np.Q * a.diff;
}

inline double gamma_opt_from_spectrum(const NormalizedParams& np, const MechanicalSpec& mech) {
  return gamma_opt_ratio_from_spectrum(np) * mech.Gamma();
}

// Bad-cavity flank-detuning closed form of the optomechanical damping [rad/s]:
// Gamma_opt = Gamma Q beta (omega0 tau / (1 + omega0^2 tau^2)) (2R/c) (8F/lambda) P_abs / K.
// At Delta = kappa this is identical to the classical cold-damping term, since
// dPabs/dx = (8F/lambda) P_abs there.
inline double gamma_opt_flank(const SystemSpecs& s, const SteadyState& ss) {
  const double omega0 = s.mech.omega0;
  const double tau = s.pt.tau_th;
  const double d2 = omega0 * tau * omega0 * tau;
  const double P_abs = s.cavity.A * hbar * s.cavity.omega_L() * ss.alpha_sq / s.cavity.tau0();
  const double recoil = 2.0 * s.cavity.R / c_light;
  return s.mech.Gamma() * s.mech.Q * s.pt.beta * (omega0 * tau / (1.0 + d2)) * recoil *
         (8.0 * s.cavity.finesse() / s.cavity.lambda) * P_abs / s.mech.K();
}

// Effective mechanical susceptibility [m/N] of the driven system, with the
// optical spring carried by the double cavity pole (kappa + i omega)^2 + Delta^2.
inline std::complex<double> effective_susceptibility(double omega, const SystemSpecs& s,
                                                     const SteadyState& ss) {
  const std::complex<double> I(0.0, 1.0);
  const double omega0 = s.mech.omega0;
  const double kappa = s.cavity.kappa();
  const double k = s.cavity.k();
  const double tau0 = s.cavity.tau0();
  const std::complex<double> mech =
      s.mech.m * (omega0 * omega0 - omega * omega + I * s.mech.Gamma() * omega);
  const std::complex<double> pole =
      (kappa + I * omega) * (kappa + I * omega) + ss.Delta * ss.Delta;
  const std::complex<double> lag = 1.0 + s.pt.beta * s.cavity.A / (1.0 + I * omega * s.pt.tau_th);
  const std::complex<double> spring =
      2.0 * ss.Delta * (hbar * k * k / (tau0 * tau0)) * ss.alpha_sq * lag / pole;
  return 1.0 / (mech - spring);
}

struct QuantumCoolingReport {
  double deltaX2;        // position variance in zero-point units; 1 = ground state
  double n_min;          // detailed-balance occupancy floor (+inf if no cooling)
  double occupancy;      // (deltaX2 - 1) / 2
  bool cooling;          // spectral asymmetry favors cooling
  bool strong_cooling;   // gamma_ratio >= 100 and small spring shift
  bool peaked_response;  // effective linewidth well below the resonance
};

// Peaked-response variance: thermal noise quenched by the damping ratio plus
// the optical force noise picked up at both sidebands.
inline QuantumCoolingReport variance_strong_cooling(const NormalizedParams& np,
                                                    double gamma_ratio) {
  if (!(gamma_ratio > 0.0))
    throw std::domain_error("variance_strong_cooling: Gamma_eff <= 0 (anti-damped point)");
  const SpectralAsymmetry a = spectral_asymmetry(np);
  const double deltaX2 =
      (1.0 + 2.0 * np.n_i + 0.5 * np.phi_nl * np.Q * (a.S_plus + a.S_minus)) / gamma_ratio;
  const NminResult nm = n_min(np);
  const BackAction ba = backaction_shift_damping(np);
  const double shifted = 1.0 + ba.delta_omega;
  const bool strong = gamma_ratio >= 100.0 && shifted > 0.0 &&
                      std::abs(std::sqrt(shifted) - 1.0) <= 0.1;
  return QuantumCoolingReport{deltaX2,
                              nm.value,
                              0.5 * (deltaX2 - 1.0),
                              nm.cooling,
                              strong,
                              gamma_ratio / np.Q <= 1e-2};
}

// Same, with the damping ratio taken self-consistently from the back-action.
inline QuantumCoolingReport variance_strong_cooling(const NormalizedParams& np) {
  return variance_strong_cooling(np, backaction_shift_damping(np).gamma_eff_over_gamma);
}

// Full spectral integral of the position variance in zero-point units: no
// peaked-response assumption. The response carries the back-action shift and
// damping consistent with the explicit forms; the flat Langevin density
// (2/Q)(n_i + 1/2) recovers 1 + 2 n_i for the undriven oscillator.
inline double variance_full(const NormalizedParams& np) {
  const BackAction ba = backaction_shift_damping(np);
  const double dW = ba.delta_omega;
  const double dG = ba.gamma_opt_over_gamma / np.Q;
  if (1.0 + dW <= 0.0)
    throw std::domain_error("variance_full: statically unstable (shifted resonance squared <= 0)");
  if (1.0 / np.Q + dG <= 0.0)
    throw std::domain_error("variance_full: dynamically unstable (total damping <= 0)");
  const double S_lang = (2.0 / np.Q) * (np.n_i + 0.5);
  auto integrand = [&](double W) {
    const double resp1 = 1.0 - W * W + dW;
    const double resp2 = std::abs(W) / np.Q + dG;
    return 2.0 * (S_lang + np.phi_nl * optical_force_spectrum(W, np)) /
           (resp1 * resp1 + resp2 * resp2);
  };
  const double peak = std::sqrt(1.0 + dW);
  const double peak_w = 1.0 / np.Q + dG;
  const double cav = std::sqrt(1.0 + np.phi * np.phi) / np.b;
  SpectrumQuadrature sq;
  sq.peaks = {{peak, peak_w}, {-peak, peak_w}, {0.0, 1.0 / np.d},
              {cav, 1.0 / np.b}, {-cav, 1.0 / np.b}};
  return integrate_spectrum(integrand, sq) / (2.0 * pi);
}

}  // namespace photocool
