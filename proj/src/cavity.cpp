#include "ilsim/cavity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ilsim/constants.hpp"

namespace ilsim {

using namespace constants;

CavityMode mode_from_geometry(const CavityConfig& cfg, double lambda_lase) {
  const double L = cfg.length, r = cfg.curvature;
  if (!(L > 0.0) || !(r > 0.0))
    throw std::domain_error("cavity: length and curvature must be positive");
  double g_stab = 1.0 - L / r;
  if (!(g_stab > 0.0 && g_stab < 1.0))
    throw std::domain_error("cavity: unstable geometry, need 0 < 1 - L/r < 1");
  if (!(cfg.refl1 > 0.0 && cfg.refl1 < 1.0 && cfg.refl2 > 0.0 && cfg.refl2 < 1.0))
    throw std::domain_error("cavity: reflectivities must lie in (0, 1)");
  if (!(cfg.cell_length > 0.0 && cfg.cell_length <= L))
    throw std::domain_error("cavity: need 0 < L_cell <= L");

  CavityMode m;
  // waist sits on the flat mirror
  double z_rayleigh = std::sqrt(L * (r - L));
  double w_waist = std::sqrt(lambda_lase * z_rayleigh / pi);
  m.w_s2 = w_waist;
  m.w_s1 = w_waist * std::sqrt(1.0 + (L / z_rayleigh) * (L / z_rayleigh));
  m.w0 = 0.5 * (m.w_s1 + m.w_s2);
  m.mode_volume = 0.25 * L * pi * m.w0 * m.w0;
  m.fsr = speed_of_light / (2.0 * L);
  m.round_trip_time = 1.0 / m.fsr;

  double rr = cfg.refl1 * cfg.refl2;
  m.kappa0_mirror = -std::log(rr) / m.round_trip_time;
  m.finesse_mirror = pi * std::pow(rr, 0.25) / (1.0 - std::sqrt(rr));

  m.kappa0 = cfg.kappa0_measured.value_or(m.kappa0_mirror);
  m.finesse = cfg.finesse_override.value_or(m.fsr / (m.kappa0 / two_pi));
  m.cell_length = cfg.cell_length;
  m.coupling_fraction = cfg.coupling_fraction;
  return m;
}

double emission_ratio(double refl, const PhaseShift& phi) {
  if (!(refl >= 0.0 && refl < 1.0))
    throw std::domain_error("emission_ratio: reflectivity must lie in [0, 1)");
  double denom = 1.0 + refl * refl - 2.0 * refl * phi.cos_full();
  return (1.0 - refl * refl) / denom;
}

double loss_coefficient(double finesse, const PhaseShift& phi) {
  if (!(finesse > 0.0))
    throw std::domain_error("loss_coefficient: finesse must be positive");
  double q = 2.0 * finesse / pi;
  double s = phi.sin_half();
  return 1.0 + q * q * s * s;
}

double photon_lifetime(double eta, double kappa0) {
  if (!(eta >= 1.0))
    throw std::domain_error("photon_lifetime: eta must be >= 1");
  if (!(kappa0 > 0.0))
    throw std::domain_error("photon_lifetime: kappa0 must be positive");
  return 1.0 / (eta * kappa0);
}

PhaseShift detuning_to_phase(double cavity_detuning_rad_s, double fsr_hz) {
  if (!(fsr_hz > 0.0))
    throw std::domain_error("detuning_to_phase: FSR must be positive");
  return PhaseShift::from_detuning(cavity_detuning_rad_s, fsr_hz);
}

}  // namespace ilsim
