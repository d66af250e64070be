#ifndef ILSIM_PULLING_HPP
#define ILSIM_PULLING_HPP

#include <vector>

#include "ilsim/dynamics.hpp"
#include "ilsim/linewidth.hpp"
#include "ilsim/phase.hpp"

namespace ilsim {

// Closed-form frequency shift of spontaneous emission coupled to the cavity:
//   Delta = (Gamma/4) (2F/pi)^2 sin(dphi) / (1 + (2F/pi)^2 sin^2(dphi/2))
// Zero at resonance and at anti-resonance.
double pulling_shift(double gamma, double finesse, const PhaseShift& phi);

struct PullingCoefficients {
  double resonant;       // Gamma / kappa0
  double antiresonant;   // -(pi/2F)^2 Gamma / kappa0
};
PullingCoefficients pulling_coefficient_table(double gamma, double kappa0,
                                              double finesse);

struct PullingResult {
  double delta = 0.0;        // rad/s, lasing frequency shift
  double coefficient = 0.0;  // d omega / d omega_c at this point
  double photon_number = 0.0;
  int iterations = 0;
};

enum class PullingClosure {
  // Phase balance of the saturated gain dispersion against the intracavity
  // feedback phase: atan(2 Delta / Gamma') = psi(dphi - Delta t_rt), with
  // psi the multi-pass feedback phase for R* = F/(pi + F) and
  // Gamma' = Gamma / xi(alpha, beta(n)) the effective dispersion width.
  phase_balance,
  // Eq-style shift evaluated with the power-broadened width
  // Gamma_eff = Gamma sqrt(1 + n/ns); kept for comparison.
  power_broadened_shift,
};

class PullingNoConvergence : public std::runtime_error {
 public:
  PullingNoConvergence(const std::string& msg, std::vector<double> history)
      : std::runtime_error(msg), iterate_history(std::move(history)) {}
  std::vector<double> iterate_history;
};

struct PullingContext {
  ModelParams params;          // Delta is overwritten per iterate
  double finesse = 0.0;
  double round_trip_time = 0.0;  // s
  double alpha = 0.0;            // inhomogeneous width parameter
  double n_sat = 0.0;            // saturation photon number
  PullingClosure closure = PullingClosure::phase_balance;
  double convergence = constants::two_pi * 1e3;  // rad/s on |Delta_k+1 - Delta_k|
  int max_iterations = 100;
  SolverOptions solver;
};

// Fixed point between the steady-state photon number at the current shift and
// the shift implied by the dispersion balance. Requires inversion (above
// threshold). The slope is evaluated by symmetric finite difference in dphi.
PullingResult pulling_selfconsistent(const PullingContext& ctx,
                                     const PhaseShift& phi);

// slope d Delta / d(omega_c - omega0) at phi by symmetric difference
double pulling_slope(const PullingContext& ctx, const PhaseShift& phi,
                     double dphi_step = 0.02);

// shift and local slope together
PullingResult pulling_point(const PullingContext& ctx, const PhaseShift& phi,
                            double dphi_step = 0.02);

}  // namespace ilsim

#endif
