#include "ilsim/atomic.hpp"

#include <cmath>

#include "ilsim/constants.hpp"

namespace ilsim {

using namespace constants;

double AtomicSystem::lase_omega0() const {
  return two_pi * speed_of_light / lambda_lase;
}

void AtomicSystem::validate() const {
  static constexpr std::pair<int, int> required[] = {
      {2, 1}, {2, 3}, {2, 5}, {3, 4}, {3, 6}, {4, 1}, {5, 4}, {5, 6}, {6, 1}};
  for (auto [i, j] : required) {
    double g = rate(i, j);  // throws if absent
    if (!(g > 0.0))
      throw std::invalid_argument("AtomicSystem: Gamma_" + std::to_string(i) +
                                  std::to_string(j) + " must be positive");
  }
  if (!(lambda_pump > 0.0) || !(lambda_lase > 0.0))
    throw std::invalid_argument("AtomicSystem: wavelengths must be positive");
  if (!(dipole_moment > 0.0))
    throw std::invalid_argument("AtomicSystem: dipole moment must be positive");
  if (!(atomic_mass > 0.0))
    throw std::invalid_argument("AtomicSystem: mass must be positive");
  if (!(t_int > 0.0))
    throw std::invalid_argument("AtomicSystem: t_int must be positive");
}

AtomicSystem cs_default() {
  AtomicSystem sys;
  // 7P1/2 branching (459 nm pump upper state)
  sys.decay_rates[{2, 1}] = 0.793e6;
  sys.decay_rates[{2, 3}] = 3.52e6;
  sys.decay_rates[{2, 5}] = 1.59e6;
  // 7S1/2: 1470 nm (2pi x 1.81 MHz) and 1359 nm branches, total 17.6e6
  sys.decay_rates[{3, 4}] = two_pi * 1.81e6;
  sys.decay_rates[{3, 6}] = 17.6e6 - two_pi * 1.81e6;
  // D lines
  sys.decay_rates[{4, 1}] = 32.4e6;
  sys.decay_rates[{6, 1}] = 28.6e6;
  // 5D3/2 reservoir drain; effective values, see configs/cs_default.json
  sys.decay_rates[{5, 4}] = 0.10e6;
  sys.decay_rates[{5, 6}] = 1.15e6;
  return sys;
}

double vapor_number_density(const AtomicSystem& sys, double temperature_K) {
  if (!(temperature_K > 273.0 && temperature_K < 500.0))
    throw std::domain_error("vapor_number_density: temperature " +
                            std::to_string(temperature_K) +
                            " K outside (273, 500) K");
  auto raw = [&](double T) {
    double p_atm = std::pow(10.0, sys.vapor_a - sys.vapor_b / T);
    return p_atm * 101325.0 / (boltzmann * T);
  };
  double scale = sys.calibration_density / raw(sys.calibration_temperature);
  return scale * raw(temperature_K);
}

double saturation_intensity(const AtomicSystem& sys) {
  sys.validate();
  double lam3 = sys.lambda_pump * sys.lambda_pump * sys.lambda_pump;
  return pi * planck * speed_of_light * sys.gamma2_total() / (3.0 * lam3);
}

}  // namespace ilsim
