#ifndef ILSIM_PHASE_HPP
#define ILSIM_PHASE_HPP

#include <cmath>

#include "ilsim/constants.hpp"

namespace ilsim {

// Round-trip phase detuning of the cavity from the atomic line.
// Resonance at 0 mod 2pi, anti-resonance at pi mod 2pi; one free spectral
// range of cavity-frequency detuning maps to 2pi.
class PhaseShift {
 public:
  PhaseShift() = default;
  explicit PhaseShift(double radians) : raw_(radians) {}

  static PhaseShift from_pi_multiples(double k) {
    return PhaseShift(k * constants::pi);
  }
  // cavity_detuning = omega_c - omega_0 in rad/s, FSR in Hz
  static PhaseShift from_detuning(double cavity_detuning_rad_s, double fsr_hz);

  double radians() const { return raw_; }
  // reduced to [0, 2pi)
  double canonical() const {
    double c = std::fmod(raw_, constants::two_pi);
    return c < 0.0 ? c + constants::two_pi : c;
  }
  int winding() const {
    return static_cast<int>(std::floor(raw_ / constants::two_pi));
  }

  double sin_full() const { return std::sin(raw_); }       // sin(dphi)
  double sin_half() const { return std::sin(0.5 * raw_); } // sin(dphi/2)
  double cos_full() const { return std::cos(raw_); }

  PhaseShift operator+(double d) const { return PhaseShift(raw_ + d); }
  PhaseShift operator-(double d) const { return PhaseShift(raw_ - d); }

 private:
  double raw_ = 0.0;
};

inline PhaseShift PhaseShift::from_detuning(double cavity_detuning_rad_s,
                                            double fsr_hz) {
  return PhaseShift(cavity_detuning_rad_s / fsr_hz);
}

}  // namespace ilsim

#endif
