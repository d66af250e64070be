#ifndef ILSIM_CONSTANTS_HPP
#define ILSIM_CONSTANTS_HPP

// CODATA 2018 values; h, kB exact by SI definition.
namespace ilsim::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double planck = 6.62607015e-34;          // J s
inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double boltzmann = 1.380649e-23;         // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double atomic_mass_unit = 1.66053906660e-27;    // kg

inline constexpr double zero_celsius = 273.15;            // K

}  // namespace ilsim::constants

#endif
