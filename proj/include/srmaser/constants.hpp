// constants.hpp - physical constants and unit helpers
//
// Internal convention everywhere in this library: angular frequencies
// (rad/s) and rates (1/s). Interfaces that accept Hz convert here.

#pragma once

#include <numbers>

namespace srmaser {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA / SI-exact values
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K

// NV center gyromagnetic ratio, 2.8 MHz/G = 2.8e10 Hz/T (angular below).
// Overridable in the sensing API for other spin species.
inline constexpr double gamma_nv_default = two_pi * 2.8e10;  // rad/(s T)

inline constexpr double hz_to_angular(double f_hz) { return two_pi * f_hz; }
inline constexpr double angular_to_hz(double w) { return w / two_pi; }

}  // namespace srmaser
