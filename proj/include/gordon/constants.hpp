#pragma once

#include <numbers>

// CODATA 2018 exact / recommended values, SI units.
namespace gordon::si {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c = 2.99792458e8;            // m / s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K

/// Prefactor of the horizon temperature law T = κ ħ c / (4π k_B).
/// The 4π (not the 2π of the usual Hawking relation) is kept as written
/// for the dielectric analogue; change it here only.
inline constexpr double hawking_denominator = 4.0 * std::numbers::pi;

} // namespace gordon::si
