#ifndef ILSIM_GAIN_HPP
#define ILSIM_GAIN_HPP

#include "ilsim/atomic.hpp"
#include "ilsim/cavity.hpp"

namespace ilsim {

struct PumpVaporConfig {
  double intensity = 1e4;      // W/m^2 pump intensity
  double pump_detuning = 0.0;  // rad/s, detuning of the pump from |1>-|2>
  double temperature = 373.15; // K, vapor cell
};

// Velocity-selective pump chain evaluated at one (I, T) point.
struct GainParams {
  double omega_rabi = 0.0;   // rad/s
  double gamma2 = 0.0;       // rad/s, saturation-broadened width of |2>
  double delta_v = 0.0;      // m/s, full velocity capture width
  double gamma_doppler = 0.0;  // rad/s, residual Doppler width of |3>
  double gamma = 0.0;        // rad/s, total dipole decay Gamma_0 + Gamma_D
  double atoms_in_mode = 0.0;      // N
  double effective_atoms = 0.0;    // N_eff
  double coupling = 0.0;     // rad/s, atom-cavity coupling g
  double tau_cyc = 0.0;      // s, pump cycle time at this Omega
};

// Omega = sqrt(3 lambda21^3 Gamma21 I / (2 pi h c))
double rabi_frequency(double intensity, const AtomicSystem& sys);

// Gamma_2 = (Gamma21+Gamma23+Gamma25) sqrt(1 + I/I_s)
double pump_broadened_width(double intensity, const AtomicSystem& sys);

struct DopplerChain {
  double delta_v;        // m/s
  double gamma_doppler;  // rad/s
  double gamma;          // rad/s
};
// dv = (Gamma2/2pi) lambda21;  Gamma_D = 2pi dv / lambda34;  Gamma = Gamma0 + Gamma_D
DopplerChain doppler_chain(double gamma2, const AtomicSystem& sys);

// N = n'(T) pi L_cell w0^2 / 4
double atoms_in_mode(double temperature, const CavityMode& mode,
                     const AtomicSystem& sys);

// Maxwell weight of the captured velocity class:
// N_eff = N erf( (dv/2) sqrt(m / 2 kB T) )
double effective_atom_number(double n_atoms, double delta_v, double temperature,
                             const AtomicSystem& sys);
// same integral by adaptive quadrature; used as a cross-check
double effective_atom_number_quadrature(double n_atoms, double delta_v,
                                        double temperature,
                                        const AtomicSystem& sys);

// g = (mu/hbar) sqrt(hbar omega0 / (2 eps0 Vc))
double coupling_constant(const AtomicSystem& sys, const CavityMode& mode);

// time for one pump cycle |1>->|2>->|3>->|4>->|1>:
// 1/Omega + 1/Gamma_2tot + 1/Gamma_3tot + 1/Gamma_41, or the configured
// fixed value; +inf when Omega == 0 and no fixed value is set
double pump_cycle_time(double omega_rabi, const AtomicSystem& sys);

// full chain at one (I, T) operating point
GainParams gain_chain(const PumpVaporConfig& pump, const AtomicSystem& sys,
                      const CavityMode& mode);

}  // namespace ilsim

#endif
