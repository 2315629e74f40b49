#pragma once

// CODATA 2018 exact values; the single source of truth for physical constants.
namespace photocool {

inline constexpr double hbar    = 1.054571817e-34;  // reduced Planck constant [J s]
inline constexpr double c_light = 299792458.0;      // speed of light [m/s]
inline constexpr double k_B     = 1.380649e-23;     // Boltzmann constant [J/K]
inline constexpr double pi      = 3.141592653589793238462643383279502884;

}  // namespace photocool
