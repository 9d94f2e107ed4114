#pragma once

#include <numbers>

// Fundamental constants, SI, CODATA 2018. h, kB are exact by definition.
namespace fermiscatter::constants {

inline constexpr double pi = std::numbers::pi_v<double>;

inline constexpr double planck_h = 6.62607015e-34;          // J s
inline constexpr double hbar = planck_h / (2.0 * pi);       // J s
inline constexpr double k_boltzmann = 1.380649e-23;         // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double speed_of_light = 299792458.0;       // m/s

}  // namespace fermiscatter::constants
