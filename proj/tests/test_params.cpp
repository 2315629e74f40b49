// Parameter structs: validation, derived quantities, and the round trip
// between SI specs and the dimensionless operating point.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "photocool/params.hpp"
#include "photocool/steady_state.hpp"

using namespace photocool;

TEST_CASE("cavity spec rejects unphysical inputs") {
  REQUIRE_THROWS_AS(CavitySpec(0.0, 1064e-9, 0.001, 0.01, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(-1e-2, 1064e-9, 0.001, 0.01, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(1e-2, 0.0, 0.001, 0.01, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(1e-2, 1064e-9, 0.0, 0.01, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(1e-2, 1064e-9, 1.1, 0.01, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(1e-2, 1064e-9, 0.001, -0.01, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(1e-2, 1064e-9, 0.6, 0.5, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(CavitySpec(1e-2, 1064e-9, 0.001, 0.01, 1.5), std::invalid_argument);
  REQUIRE_NOTHROW(CavitySpec(1e-2, 1064e-9, 0.001, 0.01, 0.0));
  REQUIRE_NOTHROW(CavitySpec(1e-2, 1064e-9, 1.0, 0.0, 1.0));
}

TEST_CASE("cavity derived quantities satisfy their defining identities") {
  CavitySpec cav(1e-2, 1064e-9, 0.001, 0.01, 0.99);
  REQUIRE(cav.tau0() == 2.0 * cav.L0 / c_light);
  // kappa tau0 = (T + A) / 2 and finesse (T + A) = 2 pi, by construction
  REQUIRE(cav.kappa() * cav.tau0() == Catch::Approx((cav.T + cav.A) / 2.0).epsilon(1e-15));
  REQUIRE(cav.finesse() * (cav.T + cav.A) == Catch::Approx(2.0 * pi).epsilon(1e-15));
  REQUIRE(cav.omega_L() * cav.lambda == Catch::Approx(2.0 * pi * c_light).epsilon(1e-15));
  REQUIRE(cav.k() * cav.lambda == Catch::Approx(2.0 * pi).epsilon(1e-15));
}

TEST_CASE("mechanical spec derived quantities") {
  MechanicalSpec mech(1e-12, 2.0 * pi * 1e6, 1e5);
  REQUIRE(mech.Gamma() == Catch::Approx(mech.omega0 / mech.Q).epsilon(1e-15));
  REQUIRE(mech.K() == Catch::Approx(mech.m * mech.omega0 * mech.omega0).epsilon(1e-15));
  // zero-point spread: x_zpf^2 * 2 m omega0 = hbar
  const double z = mech.x_zpf();
  REQUIRE(z * z * 2.0 * mech.m * mech.omega0 == Catch::Approx(hbar).epsilon(1e-14));

  REQUIRE_THROWS_AS(MechanicalSpec(0.0, 1e6, 1e5), std::invalid_argument);
  REQUIRE_THROWS_AS(MechanicalSpec(1e-12, -1e6, 1e5), std::invalid_argument);
  REQUIRE_THROWS_AS(MechanicalSpec(1e-12, 1e6, 0.0), std::invalid_argument);
}

TEST_CASE("photothermal and drive specs validate") {
  REQUIRE_THROWS_AS(PhotothermalSpec(-1.0, 1e-4), std::invalid_argument);
  REQUIRE_THROWS_AS(PhotothermalSpec(1e4, 0.0), std::invalid_argument);
  REQUIRE_NOTHROW(PhotothermalSpec(0.0, 1e-4));

  REQUIRE_THROWS_AS(DriveSpec(-1e-6, 0.0, 300.0), std::invalid_argument);
  REQUIRE_THROWS_AS(DriveSpec(1e-6, std::nan(""), 300.0), std::invalid_argument);
  REQUIRE_THROWS_AS(DriveSpec(1e-6, 0.0, -1.0), std::invalid_argument);
  REQUIRE_NOTHROW(DriveSpec(0.0, -1e8, 0.0));  // blue detuning and zero power are legal
}

TEST_CASE("normalized params validate") {
  REQUIRE_NOTHROW(NormalizedParams(0.01, -2.0, 0.0, 1.0, 1e5, 0.001, 0.01, 0.0, 0.0));
  REQUIRE_THROWS_AS(NormalizedParams(0.0, 1.0, 0.0, 1.0, 1e5, 0.001, 0.01, 0.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(NormalizedParams(0.01, 1.0, -1e-6, 1.0, 1e5, 0.001, 0.01, 0.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(NormalizedParams(0.01, 1.0, 0.0, 0.0, 1e5, 0.001, 0.01, 0.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(NormalizedParams(0.01, 1.0, 0.0, 1.0, 0.0, 0.001, 0.01, 0.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(NormalizedParams(0.01, 1.0, 0.0, 1.0, 1e5, 0.6, 0.5, 0.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(NormalizedParams(0.01, 1.0, 0.0, 1.0, 1e5, 0.001, 0.01, -1.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(NormalizedParams(0.01, 1.0, 0.0, 1.0, 1e5, 0.001, 0.01, 0.0, -0.1),
                    std::invalid_argument);
}

TEST_CASE("thermal occupancy obeys detailed balance and limits") {
  REQUIRE(thermal_occupancy(0.0, 1e6) == 0.0);
  // n / (n + 1) = exp(-hbar omega / kB T) on a spread of magnitudes
  const double omegas[] = {1e4, 1e6, 2.0 * pi * 1e6, 1e9};
  const double temps[] = {4.2, 77.0, 300.0, 1e-3};
  for (double w : omegas) {
    for (double T : temps) {
      const double n = thermal_occupancy(T, w);
      const double boltz = std::exp(-hbar * w / (k_B * T));
      REQUIRE(n / (n + 1.0) == Catch::Approx(boltz).epsilon(1e-12));
    }
  }
  // hbar omega = kB T gives exactly 1 / (e - 1)
  const double w_match = k_B * 1.0 / hbar;
  REQUIRE(thermal_occupancy(1.0, w_match) == Catch::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
  REQUIRE_THROWS_AS(thermal_occupancy(-1.0, 1e6), std::invalid_argument);
}

TEST_CASE("bath temperature inverts thermal occupancy") {
  const double pairs[][2] = {{1e-3, 1e6}, {2.5, 2.0 * pi * 1e6}, {1e4, 6.28e5}, {0.1, 1e9}};
  for (const auto& p : pairs) {
    const double T_env = bath_temperature(p[0], p[1]);
    REQUIRE(thermal_occupancy(T_env, p[1]) == Catch::Approx(p[0]).epsilon(1e-12));
  }
  REQUIRE_THROWS_AS(bath_temperature(0.0, 1e6), std::invalid_argument);
}

TEST_CASE("normalize maps an undriven point to zero drive strength") {
  CavitySpec cav(1e-2, 1064e-9, 0.001, 0.01, 1.0);
  MechanicalSpec mech(1e-12, 628318.5307179587, 1e5);
  PhotothermalSpec pt(1e4, 1e-4);
  DriveSpec drive(0.0, 2e8, 300.0);
  auto branches = solve_steady_state(cav, mech, pt, drive);
  REQUIRE(branches.size() == 1);
  NormalizedParams np = normalize(cav, mech, pt, drive, branches[0]);
  REQUIRE(np.phi_nl == 0.0);
  REQUIRE(np.b == Catch::Approx(mech.omega0 / cav.kappa()).epsilon(1e-15));
  REQUIRE(np.phi == Catch::Approx(drive.delta_c / cav.kappa()).epsilon(1e-15));
  REQUIRE(np.d == Catch::Approx(mech.omega0 * pt.tau_th).epsilon(1e-15));
  REQUIRE(np.T == cav.T);
  REQUIRE(np.A == cav.A);
  REQUIRE(np.beta == pt.beta);
  REQUIRE(np.n_i == Catch::Approx(thermal_occupancy(300.0, mech.omega0)).epsilon(1e-15));
}

TEST_CASE("denormalize then normalize reproduces the dimensionless ratios") {
  const NormalizedParams cases[] = {
      NormalizedParams(0.01, 1.0, 3e-6, 100.0, 1e5, 0.001, 0.01, 1e4, 2.5),
      NormalizedParams(2.0, 2.2360679, 1e-4, 0.5, 1e6, 0.05, 0.05, 0.0, 0.0),
      NormalizedParams(0.1, -0.7, 1e-7, 1e4, 1e3, 0.01, 0.001, 1e5, 40.0),
      NormalizedParams(1.0, 0.3, 0.0, 1.0, 50.0, 0.2, 0.1, 7.0, 1e-3),
  };
  for (const auto& np : cases) {
    Embodiment e = denormalize(np);
    NormalizedParams back = normalize(e.specs.cavity, e.specs.mech, e.specs.pt, e.specs.drive, e.ss);
    REQUIRE(back.b == Catch::Approx(np.b).epsilon(1e-12));
    REQUIRE(back.phi == Catch::Approx(np.phi).epsilon(1e-12));
    if (np.phi_nl == 0.0)
      REQUIRE(back.phi_nl == 0.0);
    else
      REQUIRE(back.phi_nl == Catch::Approx(np.phi_nl).epsilon(1e-12));
    REQUIRE(back.d == Catch::Approx(np.d).epsilon(1e-12));
    REQUIRE(back.Q == Catch::Approx(np.Q).epsilon(1e-12));
    REQUIRE(back.T == np.T);
    REQUIRE(back.A == np.A);
    REQUIRE(back.beta == np.beta);
    if (np.n_i == 0.0)
      REQUIRE(back.n_i == 0.0);
    else
      REQUIRE(back.n_i == Catch::Approx(np.n_i).epsilon(1e-12));
  }
}

TEST_CASE("denormalize lands on a self-consistent branch at the chosen scales") {
  NormalizedParams np(0.01, 1.0, 3e-6, 100.0, 1e5, 0.001, 0.01, 1e4, 2.5);
  const double kappa = 3e7, m = 5e-13, lambda = 1550e-9;
  Embodiment e = denormalize(np, kappa, m, lambda);
  REQUIRE(e.specs.cavity.kappa() == Catch::Approx(kappa).epsilon(1e-12));
  REQUIRE(e.specs.mech.m == m);
  REQUIRE(e.specs.cavity.lambda == lambda);
  REQUIRE(e.specs.cavity.R == 1.0);
  REQUIRE(e.ss.stable);
  REQUIRE(steady_state_residual(e.ss, e.specs.cavity, e.specs.mech, e.specs.pt, e.specs.drive) <
          1e-12);
  // the embodied photon number is an actual root of the cavity response
  auto branches = solve_steady_state(e.specs.cavity, e.specs.mech, e.specs.pt, e.specs.drive);
  bool found = false;
  for (const auto& b : branches)
    if (std::abs(b.alpha_sq - e.ss.alpha_sq) <= 1e-9 * e.ss.alpha_sq) found = true;
  REQUIRE(found);

  REQUIRE_THROWS_AS(denormalize(np, -1.0, m, lambda), std::invalid_argument);
  REQUIRE_THROWS_AS(denormalize(np, kappa, 0.0, lambda), std::invalid_argument);
}
