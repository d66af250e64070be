#include "ilsim/pulling.hpp"

#include <cmath>

#include "ilsim/constants.hpp"
#include "ilsim/special.hpp"

namespace ilsim {

using namespace constants;

double pulling_shift(double gamma, double finesse, const PhaseShift& phi) {
  if (!(gamma > 0.0)) throw std::domain_error("pulling_shift: Gamma must be > 0");
  double q = 2.0 * finesse / pi;
  double sh = phi.sin_half();
  return 0.25 * gamma * q * q * phi.sin_full() / (1.0 + q * q * sh * sh);
}

PullingCoefficients pulling_coefficient_table(double gamma, double kappa0,
                                              double finesse) {
  if (!(gamma > 0.0 && kappa0 > 0.0 && finesse > 0.0))
    throw std::domain_error("pulling_coefficient_table: inputs must be positive");
  double base = gamma / kappa0;
  double q = pi / (2.0 * finesse);
  return {base, -q * q * base};
}

namespace {

// multi-pass feedback phase of the cavity field sum, effective amplitude
// reflectivity R* chosen so the resonant slope matches the finesse in use:
// psi'(0) = R*/(1-R*) = F/pi
double feedback_phase(double rstar, double delta) {
  return std::atan2(rstar * std::sin(delta), 1.0 - rstar * std::cos(delta));
}

// solve atan(2 Delta / Gd) = psi(dphi - Delta t_rt) for Delta by bisection;
// the left side dominates so the bracket within one FSR holds a single root
double solve_phase_balance(double gamma_disp, double rstar, double dphi,
                           double t_rt) {
  auto f = [&](double d) {
    return std::atan(2.0 * d / gamma_disp) -
           feedback_phase(rstar, dphi - d * t_rt);
  };
  double lim = 0.45 * two_pi / t_rt;
  double lo = -lim, hi = lim;
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw std::runtime_error("pulling: phase balance not bracketed");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0 || hi - lo < 1e-9 * std::max(1.0, std::abs(mid))) return mid;
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PullingResult pulling_selfconsistent(const PullingContext& ctx,
                                     const PhaseShift& phi) {
  const double gamma = ctx.params.gain.gamma;
  const double rstar = ctx.finesse / (pi + ctx.finesse);
  std::vector<double> history;
  double delta = 0.0;
  PullingResult out;
  for (int k = 0; k < ctx.max_iterations; ++k) {
    ModelParams p = ctx.params;
    p.lasing_detuning = delta;
    SteadyResult sr = integrate_to_steady_state(p, SimState::vacuum(), ctx.solver);
    double n = sr.state.n;
    if (!(sr.state.rho[2] > sr.state.rho[3]))
      throw NoInversionError("pulling_selfconsistent requires inversion");
    double beta = std::sqrt(1.0 + std::max(n, 0.0) / ctx.n_sat);
    double next;
    if (ctx.closure == PullingClosure::phase_balance) {
      double gamma_disp = gamma / xi_coefficient(ctx.alpha, beta);
      next = solve_phase_balance(gamma_disp, rstar, phi.radians(),
                                 ctx.round_trip_time);
    } else {
      next = pulling_shift(gamma * beta, ctx.finesse, phi);
    }
    history.push_back(next);
    out.photon_number = n;
    out.iterations = k + 1;
    if (std::abs(next - delta) < ctx.convergence) {
      out.delta = next;
      return out;
    }
    delta = next;
  }
  throw PullingNoConvergence("pulling fixed point did not converge", history);
}

double pulling_slope(const PullingContext& ctx, const PhaseShift& phi,
                     double dphi_step) {
  PullingResult hiR = pulling_selfconsistent(ctx, phi + dphi_step);
  PullingResult loR = pulling_selfconsistent(ctx, phi - dphi_step);
  // d(dphi)/d(omega_c) = t_rt
  return (hiR.delta - loR.delta) / (2.0 * dphi_step) * ctx.round_trip_time;
}

PullingResult pulling_point(const PullingContext& ctx, const PhaseShift& phi,
                            double dphi_step) {
  PullingResult r = pulling_selfconsistent(ctx, phi);
  r.coefficient = pulling_slope(ctx, phi, dphi_step);
  return r;
}

}  // namespace ilsim
