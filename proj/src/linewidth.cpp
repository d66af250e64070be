#include "ilsim/linewidth.hpp"

#include <cmath>

#include "ilsim/constants.hpp"
#include "ilsim/special.hpp"

namespace ilsim {

using namespace constants;

double saturation_photon_number(const LinewidthParams& lw, double coupling) {
  return lw.gamma_eg / (4.0 * coupling * coupling) * lw.gamma_e * lw.gamma_g /
         (lw.gamma_e + lw.gamma_g);
}

double doppler_width_thermal(double delta_v, double omega0) {
  return 0.5 * delta_v / speed_of_light * omega0;
}

double doppler_width_cold(double temperature, double mass, double omega0) {
  return omega0 * std::sqrt(2.0 * boltzmann * temperature /
                            (mass * speed_of_light * speed_of_light));
}

LinewidthParams linewidth_params_from_state(const SimState& state,
                                            const GainParams& gain,
                                            double doppler_width,
                                            double gamma) {
  LinewidthParams lw;
  lw.doppler_width = doppler_width;
  lw.alpha = 2.0 * doppler_width / lw.gamma_eg;
  lw.n_sat = saturation_photon_number(lw, gain.coupling);
  lw.gamma = gamma;
  double ne = state.rho[2], ng = state.rho[3];
  if (!(ne > ng))
    throw NoInversionError("linewidth undefined: no population inversion");
  lw.n_sp = ne / (ne - ng);
  return lw;
}

namespace {
// bracket coefficient of the n/ns term
double c2(double xi, const LinewidthParams& lw) {
  return ((1.0 - xi) * lw.gamma_g + 2.0 * (1.0 + xi) * lw.gamma_e) /
         (4.0 * xi * xi * (lw.gamma_e + lw.gamma_g));
}
}  // namespace

double linewidth_general(double n, const LinewidthParams& lw, double kappa0,
                         double eta) {
  double beta = std::sqrt(1.0 + n / lw.n_sat);
  double xi = xi_coefficient(lw.alpha, beta);
  double bracket = 1.0 / (xi * xi) + c2(xi, lw) * n / lw.n_sat;
  return lw.gamma * lw.gamma / (4.0 * pi * n * kappa0) * lw.n_sp * bracket / eta;
}

double linewidth_unreduced(double n, const LinewidthParams& lw, double kappa0,
                           double eta) {
  double beta = std::sqrt(1.0 + n / lw.n_sat);
  double xi = xi_coefficient(lw.alpha, beta);
  double kappa = eta * kappa0;
  double gp = lw.gamma / xi;
  double cav = gp / (gp + kappa);
  double bracket = 1.0 + c2(xi, lw) * xi * xi * n / lw.n_sat;
  return kappa / (4.0 * pi * n) * cav * cav * lw.n_sp * bracket;
}

double linewidth_power_independent(double n, const LinewidthParams& lw,
                                   double kappa0, double eta) {
  double beta = std::sqrt(1.0 + n / lw.n_sat);
  double xi = xi_coefficient(lw.alpha, beta);
  return lw.gamma * lw.gamma / (4.0 * pi * kappa0) * lw.n_sp * c2(xi, lw) /
         lw.n_sat / eta;
}

double linewidth_homogeneous(double n, const LinewidthParams& lw, double kappa0,
                             double eta) {
  double bracket = 1.0 + lw.gamma_e / (lw.gamma_e + lw.gamma_g) * n / lw.n_sat;
  return lw.gamma * lw.gamma / (4.0 * pi * n * kappa0) * lw.n_sp * bracket / eta;
}

double output_power(double n, double eta, double kappa0,
                    double coupling_fraction, double omega0) {
  if (!(n >= 0.0)) throw std::domain_error("output_power: n must be >= 0");
  if (!(coupling_fraction > 0.0 && coupling_fraction <= 1.0))
    throw std::domain_error("output_power: coupling fraction must be in (0, 1]");
  return hbar * omega0 * n * eta * kappa0 * coupling_fraction;
}

}  // namespace ilsim
