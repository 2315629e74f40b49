#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "photocool/classical.hpp"
#include "photocool/params.hpp"
#include "photocool/rng.hpp"
#include "photocool/thread_pool.hpp"

namespace photocool {

struct SimConfig {
  double dt;                    // time step [s]
  std::int64_t n_steps;         // sampled steps per realization (after burn-in)
  int n_realizations;
  std::int64_t burn_in_steps;
  std::uint64_t seed = 12345;
  std::size_t psd_segment_length = 1 << 14;
};

struct VarianceEstimate {
  double mean_x;               // [m]
  double var_x;                // [m^2]
  double stderr_var;           // [m^2], from the spread of per-realization moments
  double n_effective_samples;  // decorrelated-sample estimate
};

// Stability and validity guard. The mechanical period and the thermal lag set
// the step; the cavity is adiabatically eliminated, so instead of resolving
// 1/kappa the config must satisfy kappa tau_th >> 1 for the model to apply.
inline void validate_sim_config(const SystemSpecs& s, const SteadyState& ss,
                                const SimConfig& sim) {
  const ClassicalDynamics dyn = effective_dynamics(s, ss);
  if (!dyn.statically_stable)
    throw std::invalid_argument("sim config: operating point is statically unstable");
  if (dyn.Gamma_eff <= 0.0)
    throw std::invalid_argument("sim config: operating point is dynamically unstable");
  const double dt_max = std::min(2.0 * pi / dyn.omega_eff, s.pt.tau_th) / 20.0;
  if (!(sim.dt > 0.0) || sim.dt > dt_max) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "sim config: dt = %g s is too coarse; need dt <= min(2 pi / omega_eff, "
                  "tau_th) / 20 = %g s",
                  sim.dt, dt_max);
    throw std::invalid_argument(msg);
  }
  if (s.cavity.kappa() * s.pt.tau_th < 20.0)
    throw std::invalid_argument(
        "sim config: kappa * tau_th < 20, the adiabatic cavity model does not apply");
  if (static_cast<double>(sim.burn_in_steps) * sim.dt < 5.0 / dyn.Gamma_eff)
    throw std::invalid_argument(
        "sim config: burn-in shorter than 5 / Gamma_eff; the estimate would see the transient");
  if (sim.n_realizations < 1) throw std::invalid_argument("sim config: need at least 1 realization");
  if (sim.n_steps < 1) throw std::invalid_argument("sim config: need at least 1 sampled step");
}

namespace detail {

struct StepperParams {
  double dt, omega0_sq, Gamma, inv_m;
  double decay;       // exp(-dt / tau_th)
  double drive_gain;  // (1 - decay) * beta * (2R/c) * dPabs_dx
  double sd_v;        // velocity kick from the Langevin force
  double sd_F;        // memory-force kick from absorbed-power shot noise
};

inline StepperParams make_stepper(const SystemSpecs& s, const SteadyState& ss, double dt) {
  const AbsorbedPowerLinearization lin =
      absorbed_power_linearized_at(s.cavity, s.drive.P_inc, ss.Delta);
  const double recoil = 2.0 * s.cavity.R / c_light;
  const double bg = s.pt.beta * recoil;
  const double S_langevin = 2.0 * k_B * s.drive.T_env * s.mech.m * s.mech.Gamma();
  const double S_shot = hbar * s.cavity.omega_L() * lin.P_abs0;
  const double decay = std::exp(-dt / s.pt.tau_th);
  StepperParams p;
  p.dt = dt;
  p.omega0_sq = s.mech.omega0 * s.mech.omega0;
  p.Gamma = s.mech.Gamma();
  p.inv_m = 1.0 / s.mech.m;
  p.decay = decay;
  p.drive_gain = (1.0 - decay) * bg * lin.dPabs_dx;
  p.sd_v = std::sqrt(S_langevin * dt) / s.mech.m;
  p.sd_F = bg * std::sqrt(S_shot * (1.0 - decay * decay) / (2.0 * s.pt.tau_th));
  return p;
}

struct RealizationMoments {
  double mean;  // time-averaged position [m]
  double m2;    // time-averaged squared position [m^2]
};

// Semi-implicit (velocity-first) stepping for the oscillator; the memory force
// uses its exact exponential propagator, so the thermal lag never limits dt.
// The memory force relaxes toward beta (2R/c) (dPabs/dx) x plus shot noise.
template <class SampleSink>
RealizationMoments run_realization(const StepperParams& p, const SimConfig& sim,
                                   std::uint64_t stream, SampleSink&& sink) {
  NoiseStream noise(sim.seed, stream);
  double x = 0.0, v = 0.0, F = 0.0;
  double sum = 0.0, sum2 = 0.0;
  const std::int64_t total = sim.burn_in_steps + sim.n_steps;
  for (std::int64_t i = 0; i < total; ++i) {
    const GaussianPair z = noise.gaussian_pair();
    const double x_old = x;
    v += p.dt * (-p.omega0_sq * x_old - p.Gamma * v + F * p.inv_m) + p.sd_v * z.z1;
    x += p.dt * v;
    F = p.decay * F + p.drive_gain * x_old + p.sd_F * z.z2;
    if (i >= sim.burn_in_steps) {
      sum += x;
      sum2 += x * x;
      sink(x, v, F);
    }
  }
  const double n = static_cast<double>(sim.n_steps);
  return {sum / n, sum2 / n};
}

}  // namespace detail

// Ensemble Monte-Carlo estimate of the steady-state position variance of the
// linearized classical dynamics. Each realization owns a counter-seeded noise
// stream, so the result is independent of scheduling and bit-reproducible.
inline VarianceEstimate simulate_classical(const SystemSpecs& s, const SteadyState& ss,
                                           const SimConfig& sim) {
  validate_sim_config(s, ss, sim);
  const detail::StepperParams p = detail::make_stepper(s, ss, sim.dt);
  const std::size_t M = static_cast<std::size_t>(sim.n_realizations);
  std::vector<detail::RealizationMoments> per(M);
  parallel_for(M, [&](std::size_t r) {
    per[r] = detail::run_realization(p, sim, r, [](double, double, double) {});
  });

  double mean = 0.0, m2 = 0.0;
  for (const auto& q : per) {
    mean += q.mean;
    m2 += q.m2;
  }
  mean /= static_cast<double>(M);
  m2 /= static_cast<double>(M);
  double spread = 0.0;
  for (const auto& q : per) spread += (q.m2 - m2) * (q.m2 - m2);
  const double stderr_var =
      M > 1 ? std::sqrt(spread / (static_cast<double>(M) * (static_cast<double>(M) - 1.0)))
            : std::numeric_limits<double>::infinity();

  const ClassicalDynamics dyn = effective_dynamics(s, ss);
  const double t_sample = static_cast<double>(sim.n_steps) * sim.dt;
  const double n_eff = static_cast<double>(M) * t_sample * dyn.Gamma_eff / 2.0;
  return VarianceEstimate{mean, m2 - mean * mean, stderr_var, n_eff};
}

struct Trajectory {
  double dt;
  std::vector<double> x, v, F;  // [m], [m/s], [N]
};

// Single stored realization (post burn-in), for spectral estimation and dumps.
inline Trajectory simulate_trajectory(const SystemSpecs& s, const SteadyState& ss,
                                      const SimConfig& sim, std::uint64_t realization) {
  validate_sim_config(s, ss, sim);
  const detail::StepperParams p = detail::make_stepper(s, ss, sim.dt);
  Trajectory tr;
  tr.dt = sim.dt;
  tr.x.reserve(static_cast<std::size_t>(sim.n_steps));
  tr.v.reserve(static_cast<std::size_t>(sim.n_steps));
  tr.F.reserve(static_cast<std::size_t>(sim.n_steps));
  detail::run_realization(p, sim, realization, [&](double x, double v, double F) {
    tr.x.push_back(x);
    tr.v.push_back(v);
    tr.F.push_back(F);
  });
  return tr;
}

}  // namespace photocool
