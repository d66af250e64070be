#ifndef ILSIM_LINEWIDTH_HPP
#define ILSIM_LINEWIDTH_HPP

#include "ilsim/dynamics.hpp"

namespace ilsim {

// Parameters of the quantum-limited linewidth model for the 1470 nm
// transition. Gamma_e/Gamma_g are the upper/lower population decay rates,
// Gamma_eg the polarization decay rate.
struct LinewidthParams {
  double gamma_e = 17.6e6;    // 1/s
  double gamma_g = 32.4e6;    // 1/s
  double gamma_eg = 11.4e6;   // 1/s
  double doppler_width = 0.0; // rad/s, Delta omega_D (half capture width)
  double alpha = 0.0;         // 2 doppler_width / gamma_eg
  double n_sat = 0.0;         // saturation photon number
  double n_sp = 0.0;          // spontaneous-emission factor Ne/(Ne-Ng)
  double gamma = 0.0;         // rad/s, dipole decay entering the prefactor
};

class NoInversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n_sat = Gamma_eg Gamma_e Gamma_g / (4 g^2 (Gamma_e + Gamma_g))
double saturation_photon_number(const LinewidthParams& lw, double coupling);

// Doppler width from the captured velocity class: (dv/2)/c * omega0
double doppler_width_thermal(double delta_v, double omega0);
// Doppler width of a gas at temperature T: omega0 sqrt(2 kB T / (m c^2))
double doppler_width_cold(double temperature, double mass, double omega0);

// Builds the linewidth parameter block from a converged steady state.
// gamma defaults to the thermal dipole decay (gain.gamma); pass
// lw.gamma_eg for a Doppler-free medium. Throws NoInversionError when
// rho33 <= rho44.
LinewidthParams linewidth_params_from_state(const SimState& state,
                                            const GainParams& gain,
                                            double doppler_width,
                                            double gamma);

// Full expression (bad-cavity reduced form):
//   dnu = Gamma^2/(4 pi n kappa0) Nsp [1/xi^2 + c2(xi) n/ns] / eta, Hz
double linewidth_general(double n, const LinewidthParams& lw, double kappa0,
                         double eta);

// Non-reduced form with the (G'/(G'+kappa))^2 cavity factor, G' = Gamma/xi
double linewidth_unreduced(double n, const LinewidthParams& lw, double kappa0,
                           double eta);

// Power-independent limit (second bracket term only)
double linewidth_power_independent(double n, const LinewidthParams& lw,
                                   double kappa0, double eta);

// Homogeneous limit:
//   dnu = Gamma^2/(4 pi n kappa0) Nsp (1 + Ge/(Ge+Gg) n/ns) / eta, Hz
double linewidth_homogeneous(double n, const LinewidthParams& lw, double kappa0,
                             double eta);

// P_out = hbar omega0 n (eta kappa0) coupling_fraction, W
double output_power(double n, double eta, double kappa0,
                    double coupling_fraction, double omega0);

}  // namespace ilsim

#endif
