#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "photocool/constants.hpp"

namespace photocool {

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace detail

// Fabry-Perot cavity with one coupling mirror (power transmission T), total
// absorption loss A per round trip, and a back-mirror power reflectivity R
// feeding the bolometric force. All losses are per round trip.
struct CavitySpec {
  double L0;      // cavity length [m]
  double lambda;  // drive wavelength [m]
  double T;       // coupling-mirror power transmission
  double A;       // absorption loss
  double R;       // reflectivity weighting the bolometric coupling

  CavitySpec(double L0_, double lambda_, double T_, double A_, double R_)
      : L0(L0_), lambda(lambda_), T(T_), A(A_), R(R_) {
    detail::require(std::isfinite(L0) && L0 > 0.0, "cavity: length must be positive");
    detail::require(std::isfinite(lambda) && lambda > 0.0, "cavity: wavelength must be positive");
    detail::require(T > 0.0 && T <= 1.0, "cavity: transmission must lie in (0, 1]");
    detail::require(A >= 0.0 && A <= 1.0, "cavity: absorption must lie in [0, 1]");
    detail::require(T + A <= 1.0, "cavity: total loss T + A cannot exceed 1");
    detail::require(R >= 0.0 && R <= 1.0, "cavity: reflectivity must lie in [0, 1]");
  }

  double omega_L() const { return 2.0 * pi * c_light / lambda; }  // drive frequency [rad/s]
  double k() const { return 2.0 * pi / lambda; }                  // wavenumber [1/m]
  double tau0() const { return 2.0 * L0 / c_light; }              // round-trip time [s]
  double kappa() const { return (T + A) / (2.0 * tau0()); }       // field decay rate [rad/s]
  double finesse() const { return 2.0 * pi / (T + A); }
};

struct MechanicalSpec {
  double m;       // effective mass [kg]
  double omega0;  // bare resonance [rad/s]
  double Q;       // mechanical quality factor

  MechanicalSpec(double m_, double omega0_, double Q_) : m(m_), omega0(omega0_), Q(Q_) {
    detail::require(std::isfinite(m) && m > 0.0, "mechanics: mass must be positive");
    detail::require(std::isfinite(omega0) && omega0 > 0.0, "mechanics: omega0 must be positive");
    detail::require(std::isfinite(Q) && Q > 0.0, "mechanics: Q must be positive");
  }

  double Gamma() const { return omega0 / Q; }        // intrinsic damping [rad/s]
  double K() const { return m * omega0 * omega0; }   // spring constant [N/m]
  double x_zpf() const { return std::sqrt(hbar / (2.0 * m * omega0)); }  // [m]
};

struct PhotothermalSpec {
  double beta;    // bolometric-to-radiation-pressure force ratio (>= 0)
  double tau_th;  // thermal relaxation time [s]

  PhotothermalSpec(double beta_, double tau_th_) : beta(beta_), tau_th(tau_th_) {
    detail::require(std::isfinite(beta) && beta >= 0.0, "photothermal: beta must be >= 0");
    detail::require(std::isfinite(tau_th) && tau_th > 0.0, "photothermal: tau_th must be positive");
  }
};

struct DriveSpec {
  double P_inc;    // incident power [W]
  double delta_c;  // empty-cavity detuning omega_c - omega_L [rad/s], red > 0
  double T_env;    // environment temperature [K]

  DriveSpec(double P_inc_, double delta_c_, double T_env_)
      : P_inc(P_inc_), delta_c(delta_c_), T_env(T_env_) {
    detail::require(std::isfinite(P_inc) && P_inc >= 0.0, "drive: power must be >= 0");
    detail::require(std::isfinite(delta_c), "drive: detuning must be finite");
    detail::require(std::isfinite(T_env) && T_env >= 0.0, "drive: temperature must be >= 0");
  }
};

// Convenience bundle for the engine entry points.
struct SystemSpecs {
  CavitySpec cavity;
  MechanicalSpec mech;
  PhotothermalSpec pt;
  DriveSpec drive;
};

// Dimensionless operating point of the driven linearized system:
//   b      = omega0 / kappa      (sideband-resolution parameter, bad cavity b < 1)
//   phi    = Delta / kappa       (dressed detuning; may be negative = blue side)
//   phi_nl = hbar k^2 alpha^2 / (K tau0^2 kappa)   (drive strength)
//   d      = omega0 tau_th       (thermal lag)
//   n_i    = thermal occupancy of the mechanical bath
struct NormalizedParams {
  double b;
  double phi;
  double phi_nl;
  double d;
  double Q;
  double T;
  double A;
  double beta;
  double n_i;

  NormalizedParams(double b_, double phi_, double phi_nl_, double d_, double Q_,
                   double T_, double A_, double beta_, double n_i_)
      : b(b_), phi(phi_), phi_nl(phi_nl_), d(d_), Q(Q_), T(T_), A(A_), beta(beta_), n_i(n_i_) {
    detail::require(std::isfinite(b) && b > 0.0, "normalized: b must be positive");
    detail::require(std::isfinite(phi), "normalized: phi must be finite");
    detail::require(std::isfinite(phi_nl) && phi_nl >= 0.0, "normalized: phi_nl must be >= 0");
    detail::require(std::isfinite(d) && d > 0.0, "normalized: d must be positive");
    detail::require(std::isfinite(Q) && Q > 0.0, "normalized: Q must be positive");
    detail::require(T > 0.0 && T <= 1.0, "normalized: T must lie in (0, 1]");
    detail::require(A >= 0.0 && A <= 1.0, "normalized: A must lie in [0, 1]");
    detail::require(T + A <= 1.0, "normalized: T + A cannot exceed 1");
    detail::require(std::isfinite(beta) && beta >= 0.0, "normalized: beta must be >= 0");
    detail::require(std::isfinite(n_i) && n_i >= 0.0, "normalized: n_i must be >= 0");
  }
};

// Self-consistent operating point of the driven cavity. Delta is the dressed
// detuning delta_c - Delta_nl actually seen by the fluctuation dynamics.
struct SteadyState {
  double alpha_sq;  // mean intracavity photon number
  double Delta;     // dressed detuning [rad/s]
  double Delta_nl;  // static radiation/bolometric retuning [rad/s]
  double x_mean;    // static mirror displacement [m]
  bool stable;      // slope criterion of the cavity response
};

// Bose occupancy of the mechanical bath; exactly 0 at T_env = 0.
inline double thermal_occupancy(double T_env, double omega0) {
  detail::require(std::isfinite(T_env) && T_env >= 0.0, "thermal_occupancy: T_env must be >= 0");
  detail::require(std::isfinite(omega0) && omega0 > 0.0, "thermal_occupancy: omega0 must be positive");
  if (T_env == 0.0) return 0.0;
  return 1.0 / std::expm1(hbar * omega0 / (k_B * T_env));
}

// Inverse of thermal_occupancy (n_i > 0).
inline double bath_temperature(double n_i, double omega0) {
  detail::require(std::isfinite(n_i) && n_i > 0.0, "bath_temperature: n_i must be positive");
  return hbar * omega0 / (k_B * std::log1p(1.0 / n_i));
}

// Map an SI operating point onto the dimensionless set.
inline NormalizedParams normalize(const CavitySpec& cavity, const MechanicalSpec& mech,
                                  const PhotothermalSpec& pt, const DriveSpec& drive,
                                  const SteadyState& ss) {
  const double kappa = cavity.kappa();
  const double tau0 = cavity.tau0();
  const double k = cavity.k();
  const double phi_nl = hbar * k * k * ss.alpha_sq / (mech.K() * tau0 * tau0 * kappa);
  return NormalizedParams(mech.omega0 / kappa, ss.Delta / kappa, phi_nl,
                          mech.omega0 * pt.tau_th, mech.Q, cavity.T, cavity.A, pt.beta,
                          thermal_occupancy(drive.T_env, mech.omega0));
}

}  // namespace photocool
