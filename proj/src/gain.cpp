#include "ilsim/gain.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ilsim/constants.hpp"

namespace ilsim {

using namespace constants;

double rabi_frequency(double intensity, const AtomicSystem& sys) {
  if (!(intensity >= 0.0))
    throw std::domain_error("rabi_frequency: intensity must be >= 0");
  double lam3 = sys.lambda_pump * sys.lambda_pump * sys.lambda_pump;
  return std::sqrt(3.0 * lam3 * sys.rate(2, 1) * intensity /
                   (two_pi * planck * speed_of_light));
}

double pump_broadened_width(double intensity, const AtomicSystem& sys) {
  if (!(intensity >= 0.0))
    throw std::domain_error("pump_broadened_width: intensity must be >= 0");
  double s = intensity / saturation_intensity(sys);
  return sys.gamma2_total() * std::sqrt(1.0 + s);
}

DopplerChain doppler_chain(double gamma2, const AtomicSystem& sys) {
  if (!(gamma2 > 0.0))
    throw std::domain_error("doppler_chain: Gamma_2 must be positive");
  DopplerChain d;
  d.delta_v = gamma2 / two_pi * sys.lambda_pump;
  d.gamma_doppler = two_pi * d.delta_v / sys.lambda_lase;
  d.gamma = sys.gamma0_lase() + d.gamma_doppler;
  return d;
}

double atoms_in_mode(double temperature, const CavityMode& mode,
                     const AtomicSystem& sys) {
  double density = vapor_number_density(sys, temperature);
  return 0.25 * density * pi * mode.cell_length * mode.w0 * mode.w0;
}

double effective_atom_number(double n_atoms, double delta_v, double temperature,
                             const AtomicSystem& sys) {
  if (!(delta_v > 0.0))
    throw std::domain_error("effective_atom_number: delta_v must be positive");
  double x = 0.5 * delta_v * std::sqrt(sys.atomic_mass /
                                       (2.0 * boltzmann * temperature));
  return n_atoms * std::erf(x);
}

double effective_atom_number_quadrature(double n_atoms, double delta_v,
                                        double temperature,
                                        const AtomicSystem& sys) {
  if (!(delta_v > 0.0))
    throw std::domain_error("effective_atom_number: delta_v must be positive");
  double a = sys.atomic_mass / (2.0 * boltzmann * temperature);
  auto f = [a](double v) { return std::exp(-a * v * v); };
  // adaptive Simpson on [0, dv/2], doubled for the symmetric interval
  std::function<double(double, double, double, double, double, int)> simpson =
      [&](double lo, double hi, double flo, double fmid, double fhi,
          int depth) -> double {
    double mid = 0.5 * (lo + hi);
    double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    double fl = f(lmid), fr = f(rmid);
    double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
    double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-13 * std::abs(whole))
      return left + right + (left + right - whole) / 15.0;
    return simpson(lo, mid, flo, fl, fmid, depth - 1) +
           simpson(mid, hi, fmid, fr, fhi, depth - 1);
  };
  double hi = 0.5 * delta_v;
  double integral = simpson(0.0, hi, f(0.0), f(0.5 * hi), f(hi), 48);
  return n_atoms * 2.0 * std::sqrt(a / pi) * integral;
}

double coupling_constant(const AtomicSystem& sys, const CavityMode& mode) {
  if (!(mode.mode_volume > 0.0))
    throw std::domain_error("coupling_constant: mode volume must be positive");
  double omega0 = sys.lase_omega0();
  return sys.dipole_moment / hbar *
         std::sqrt(hbar * omega0 / (2.0 * vacuum_permittivity * mode.mode_volume));
}

double pump_cycle_time(double omega_rabi, const AtomicSystem& sys) {
  if (sys.tau_cyc_fixed > 0.0) return sys.tau_cyc_fixed;
  if (!(omega_rabi > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / omega_rabi + 1.0 / sys.gamma2_total() +
         1.0 / (sys.rate(3, 4) + sys.rate(3, 6)) + 1.0 / sys.rate(4, 1);
}

GainParams gain_chain(const PumpVaporConfig& pump, const AtomicSystem& sys,
                      const CavityMode& mode) {
  GainParams gp;
  gp.omega_rabi = rabi_frequency(pump.intensity, sys);
  gp.gamma2 = pump_broadened_width(pump.intensity, sys);
  auto d = doppler_chain(gp.gamma2, sys);
  gp.delta_v = d.delta_v;
  gp.gamma_doppler = d.gamma_doppler;
  gp.gamma = d.gamma;
  gp.atoms_in_mode = atoms_in_mode(pump.temperature, mode, sys);
  gp.effective_atoms =
      effective_atom_number(gp.atoms_in_mode, gp.delta_v, pump.temperature, sys);
  gp.coupling = coupling_constant(sys, mode);
  gp.tau_cyc = pump_cycle_time(gp.omega_rabi, sys);
  return gp;
}

}  // namespace ilsim
