// Self-consistent cavity operating points: cubic branches, stability flags,
// residuals, and the detuning-targeted drive constructor.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "photocool/rng.hpp"
#include "photocool/steady_state.hpp"

using namespace photocool;

namespace {

CavitySpec test_cavity() { return CavitySpec(1e-2, 1064e-9, 0.001, 0.01, 1.0); }
MechanicalSpec test_mech() { return MechanicalSpec(1e-12, 628318.5307179587, 1e5); }

}  // namespace

TEST_CASE("undriven cavity has the single empty root") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  PhotothermalSpec pt(1e4, 1e-4);
  DriveSpec drive(0.0, 2.5e8, 300.0);
  auto branches = solve_steady_state(cav, mech, pt, drive);
  REQUIRE(branches.size() == 1);
  REQUIRE(branches[0].alpha_sq == 0.0);
  REQUIRE(branches[0].Delta == drive.delta_c);
  REQUIRE(branches[0].Delta_nl == 0.0);
  REQUIRE(branches[0].x_mean == 0.0);
  REQUIRE(branches[0].stable);
}

TEST_CASE("weak drive reproduces the immobile-mirror Lorentzian") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  PhotothermalSpec pt(0.0, 1e-4);
  const double kappa = cav.kappa();
  for (double phi : {-1.5, 0.0, 0.7, 2.0}) {
    DriveSpec drive(1e-15, phi * kappa, 0.0);
    auto branches = solve_steady_state(cav, mech, pt, drive);
    REQUIRE(branches.size() == 1);
    const double g = pump_strength(cav, drive);
    const double expected = g / (kappa * kappa + drive.delta_c * drive.delta_c);
    REQUIRE(branches[0].alpha_sq == Catch::Approx(expected).epsilon(1e-6));
    REQUIRE(branches[0].stable);
  }
}

TEST_CASE("bistable drive yields three branches with unstable middle") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  PhotothermalSpec pt(1e4, 1e-4);
  DriveSpec drive(1.27074090e-4, 247436006.9, 300.0);
  auto branches = solve_steady_state(cav, mech, pt, drive);
  REQUIRE(branches.size() == 3);
  REQUIRE(branches[0].alpha_sq < branches[1].alpha_sq);
  REQUIRE(branches[1].alpha_sq < branches[2].alpha_sq);
  REQUIRE(branches[0].stable);
  REQUIRE_FALSE(branches[1].stable);
  REQUIRE(branches[2].stable);
  for (const auto& ss : branches)
    REQUIRE(steady_state_residual(ss, cav, mech, pt, drive) <= 1e-10);
  REQUIRE(default_branch(branches) == 0);
}

TEST_CASE("every returned root is self-consistent on random drives") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  NoiseStream rng(424242, 0);
  const double kappa = cav.kappa();
  int saw_triple = 0;
  for (int i = 0; i < 300; ++i) {
    double beta = (i % 2 == 0) ? 0.0 : std::pow(10.0, 5.0 * rng.uniform01());
    double P_inc = std::pow(10.0, -9.0 + 6.0 * rng.uniform01());
    double delta_c = (6.0 * rng.uniform01() - 3.0) * kappa;
    if (i % 25 == 0) {
      // steer some drives onto the fold: it lives in a thin stripe around
      // P * beta ~ 1.27 W at delta_c beyond the bistability threshold
      beta = std::pow(10.0, 3.7 + 0.78 * rng.uniform01());
      delta_c = (2.75 + 0.25 * rng.uniform01()) * kappa;
      P_inc = (1.27 / beta) * std::pow(10.0, -0.09 + 0.08 * rng.uniform01());
    }
    PhotothermalSpec pt(beta, std::pow(10.0, -7.0 + 5.0 * rng.uniform01()));
    DriveSpec drive(P_inc, delta_c, 300.0);
    auto branches = solve_steady_state(cav, mech, pt, drive);
    REQUIRE((branches.size() == 1 || branches.size() == 3));
    if (branches.size() == 3) ++saw_triple;
    double prev = -1.0;
    for (const auto& ss : branches) {
      REQUIRE(ss.alpha_sq > prev);
      prev = ss.alpha_sq;
      REQUIRE(steady_state_residual(ss, cav, mech, pt, drive) <= 1e-10);
      // dressed detuning decomposes exactly
      REQUIRE(ss.Delta == Catch::Approx(drive.delta_c - ss.Delta_nl).margin(1e-6));
    }
    if (branches.size() == 3) {
      REQUIRE(branches[0].stable);
      REQUIRE_FALSE(branches[1].stable);
      REQUIRE(branches[2].stable);
    }
  }
  REQUIRE(saw_triple > 0);  // the sweep really does cross the bistable region
}

TEST_CASE("static displacement tracks the nonlinear retuning") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  PhotothermalSpec pt(1e4, 1e-4);
  DriveSpec drive(1e-6, 2.4e8, 300.0);
  auto branches = solve_steady_state(cav, mech, pt, drive);
  for (const auto& ss : branches) {
    // x_mean = sqrt(2) Delta_nl tau0 / k ties the displacement to the retuning
    const double expected = std::sqrt(2.0) * ss.Delta_nl * cav.tau0() / cav.k();
    REQUIRE(ss.x_mean == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("retuning coefficient scales linearly with the bolometric weight") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  const double c0 = nonlinear_retuning_coefficient(cav, mech, PhotothermalSpec(0.0, 1e-4));
  const double c1 = nonlinear_retuning_coefficient(cav, mech, PhotothermalSpec(1e4, 1e-4));
  REQUIRE(c0 > 0.0);
  REQUIRE(c1 == Catch::Approx(c0 * (1.0 + 1e4 * cav.A)).epsilon(1e-14));
}

TEST_CASE("drive constructor hits the requested dressed detuning exactly") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  PhotothermalSpec pt(1e4, 1e-4);
  const double kappa = cav.kappa();
  for (double target : {kappa, -0.5 * kappa, 2.0 * kappa, 0.0}) {
    DetunedOperatingPoint op = drive_for_detuning(cav, mech, pt, 1e-6, 300.0, target);
    if (target == 0.0)
      REQUIRE(op.ss.Delta == 0.0);
    else
      REQUIRE(op.ss.Delta == Catch::Approx(target).epsilon(1e-12));
    REQUIRE(steady_state_residual(op.ss, cav, mech, pt, op.drive) <= 1e-12);
    // the constructed point is a root of the full solver too
    auto branches = solve_steady_state(cav, mech, pt, op.drive);
    bool found = false;
    for (const auto& b : branches)
      if (std::abs(b.alpha_sq - op.ss.alpha_sq) <= 1e-8 * std::max(b.alpha_sq, 1e-300))
        found = true;
    REQUIRE(found);
  }
}

TEST_CASE("cavity response slope flags the unstable middle branch") {
  CavitySpec cav = test_cavity();
  MechanicalSpec mech = test_mech();
  PhotothermalSpec pt(1e4, 1e-4);
  DriveSpec drive(1.27074090e-4, 247436006.9, 300.0);
  const double c1 = nonlinear_retuning_coefficient(cav, mech, pt);
  auto branches = solve_steady_state(cav, mech, pt, drive);
  REQUIRE(branches.size() == 3);
  REQUIRE(cavity_response_slope(branches[0].alpha_sq, cav.kappa(), drive.delta_c, c1) > 0.0);
  REQUIRE(cavity_response_slope(branches[1].alpha_sq, cav.kappa(), drive.delta_c, c1) < 0.0);
  REQUIRE(cavity_response_slope(branches[2].alpha_sq, cav.kappa(), drive.delta_c, c1) > 0.0);
}
