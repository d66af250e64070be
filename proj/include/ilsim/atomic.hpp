#ifndef ILSIM_ATOMIC_HPP
#define ILSIM_ATOMIC_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace ilsim {

// Cs pump cycle:
//   |1> 6S1/2, |2> 7P1/2, |3> 7S1/2, |4> 6P3/2, |5> 5D3/2, |6> 6P1/2
// Pump |1>->|2> at 459 nm, lasing |3>->|4> at 1470 nm.
struct AtomicSystem {
  static constexpr int num_levels = 6;
  std::array<std::string, num_levels> levels = {
      "6S1/2", "7P1/2", "7S1/2", "6P3/2", "5D3/2", "6P1/2"};

  // decay rates Gamma_ij in 1/s, keyed by (upper, lower) level index (1-based)
  std::map<std::pair<int, int>, double> decay_rates;

  double lambda_pump = 459e-9;   // m
  double lambda_lase = 1470e-9;  // m
  double dipole_moment = 3.5533e-29;   // C m, lasing transition
  double atomic_mass = 2.2069469e-25;  // kg

  // interaction time of an atom with the cavity mode; fixed constant
  double t_int = 19.8e-9;  // s
  // optional fixed pump-cycle time; <=0 means compute from rates and Omega
  double tau_cyc_fixed = 0.0;  // s

  // vapor-pressure curve log10(p/atm) = vapor_a - vapor_b/T, liquid phase,
  // rescaled so that density(373.15 K) = calibration_density exactly
  double vapor_a = 4.165;
  double vapor_b = 3830.0;                 // K
  double calibration_density = 1.57e19;    // 1/m^3 at 373.15 K
  double calibration_temperature = 373.15; // K

  double rate(int i, int j) const {
    auto it = decay_rates.find({i, j});
    if (it == decay_rates.end())
      throw std::invalid_argument("AtomicSystem: missing decay rate Gamma_" +
                                  std::to_string(i) + std::to_string(j));
    return it->second;
  }

  // natural decay rate of the lasing transition (Gamma_0 = Gamma_34)
  double gamma0_lase() const { return rate(3, 4); }
  // total decay out of |2>, the width entering pump saturation
  double gamma2_total() const { return rate(2, 1) + rate(2, 3) + rate(2, 5); }

  double lase_omega0() const;

  // throws std::invalid_argument if any rate required by the dynamics is
  // missing or non-positive, or wavelengths/dipole/mass are non-positive
  void validate() const;
};

// default constants for the Cs four-level cycle plus the 5D3/2 / 6P1/2
// reservoir levels
AtomicSystem cs_default();

// saturated Cs vapor number density in 1/m^3; valid for 273 K < T < 500 K
double vapor_number_density(const AtomicSystem& sys, double temperature_K);

// I_s = pi h c Gamma / (3 lambda^3) with Gamma the total decay out of |2>,
// in W/m^2
double saturation_intensity(const AtomicSystem& sys);

}  // namespace ilsim

#endif
