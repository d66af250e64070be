#ifndef ILSIM_CAVITY_HPP
#define ILSIM_CAVITY_HPP

#include <optional>

#include "ilsim/phase.hpp"

namespace ilsim {

// Plano-concave Fabry-Perot: mirror 1 concave (radius r), mirror 2 flat.
struct CavityConfig {
  double length = 0.190;       // m, mirror spacing
  double curvature = 0.500;    // m, radius of the concave mirror
  double refl1 = 0.345;        // power reflectivity at the lasing wavelength
  double refl2 = 0.345;
  double cell_length = 0.100;  // m, vapor cell inside the cavity
  // measured resonant dissipation rate; overrides the mirror-loss value
  std::optional<double> kappa0_measured;   // rad/s
  std::optional<double> finesse_override;  // dimensionless
  double coupling_fraction = 0.5;  // fraction of cavity loss reaching the detector
};

struct CavityMode {
  double w_s1 = 0.0;     // m, spot radius on the concave mirror
  double w_s2 = 0.0;     // m, spot radius on the flat mirror
  double w0 = 0.0;       // m, mean radius (w_s1 + w_s2)/2
  double mode_volume = 0.0;  // m^3, V_c = L pi w0^2 / 4
  double fsr = 0.0;      // Hz
  double kappa0 = 0.0;   // rad/s, resonant dissipation rate in effect
  double kappa0_mirror = 0.0;  // rad/s, -ln(R1 R2) / t_rt from the mirrors alone
  double finesse = 0.0;        // FSR / (kappa0 / 2pi)
  double finesse_mirror = 0.0; // pi (R1 R2)^(1/4) / (1 - sqrt(R1 R2))
  double round_trip_time = 0.0;  // s, 2L/c
  double cell_length = 0.0;      // m, carried over from the config
  double coupling_fraction = 0.5;
};

// throws std::domain_error on unstable or degenerate geometry
CavityMode mode_from_geometry(const CavityConfig& cfg, double lambda_lase);

// Power emitted into the cavity relative to free space for an emitter at the
// cavity center, symmetric mirrors of power reflectivity R.
// (1 - R^2) / (1 + R^2 - 2 R cos dphi); throws std::domain_error for R >= 1.
double emission_ratio(double refl, const PhaseShift& phi);

// eta = 1 + (2F/pi)^2 sin^2(dphi/2); 1 at resonance, 1+(2F/pi)^2 at
// anti-resonance. Multiplies the photon loss rate.
double loss_coefficient(double finesse, const PhaseShift& phi);

inline double loss_coefficient_max(double finesse) {
  double q = 2.0 * finesse / constants::pi;
  return 1.0 + q * q;
}

// tau = 1 / (eta kappa0)
double photon_lifetime(double eta, double kappa0);

PhaseShift detuning_to_phase(double cavity_detuning_rad_s, double fsr_hz);

}  // namespace ilsim

#endif
