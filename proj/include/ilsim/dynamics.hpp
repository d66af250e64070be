#ifndef ILSIM_DYNAMICS_HPP
#define ILSIM_DYNAMICS_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "ilsim/atomic.hpp"
#include "ilsim/gain.hpp"

namespace ilsim {

// rho11..rho66 populations, pump-coherence quadratures, photon number
struct SimState {
  std::array<double, 6> rho{};  // populations, rho[0] = rho11
  double rho12_im = 0.0;
  double rho12_re = 0.0;
  double n = 0.0;  // intracavity photon number

  static constexpr int dim = 9;
  double& operator[](int i) {
    if (i < 6) return rho[static_cast<std::size_t>(i)];
    if (i == 6) return rho12_im;
    if (i == 7) return rho12_re;
    return n;
  }
  double operator[](int i) const {
    if (i < 6) return rho[static_cast<std::size_t>(i)];
    if (i == 6) return rho12_im;
    if (i == 7) return rho12_re;
    return n;
  }
  double trace() const {
    double s = 0.0;
    for (double p : rho) s += p;
    return s;
  }
  static SimState vacuum() {
    SimState s;
    s.rho[0] = 1.0;
    return s;
  }
};

enum class CoherenceDrive {
  population_difference,  // (rho11 - rho22), standard Bloch form
  literal_rho12,          // (rho11 - rho12_im), for comparison only
};

struct ModelParams {
  GainParams gain;
  double eta = 1.0;          // loss coefficient, >= 1
  double kappa0 = 0.0;       // rad/s
  double lasing_detuning = 0.0;  // rad/s, Delta = omega - omega0
  double pump_detuning = 0.0;    // rad/s, Delta'
  double t_int = 19.8e-9;    // s
  double effective_atoms = 0.0;  // N_eff used in the photon equation
  const AtomicSystem* system = nullptr;
  CoherenceDrive coherence_drive = CoherenceDrive::population_difference;
};

// time derivative of all ten components
SimState derivatives(const SimState& state, const ModelParams& p);

// sum over population derivatives; identically zero for the rate structure
double population_flow_imbalance(const SimState& state, const ModelParams& p);

struct SolverOptions {
  double tol = 10.0;       // 1/s, steady-state residual threshold (see below)
  double t_max = 4e-3;     // s, integration horizon
  double rtol = 1e-9;      // local error control, relative
  double atol_pop = 1e-14; // local error control, populations/coherences
  double atol_n = 1e-6;    // local error control, photon number
};

struct SteadyResult {
  SimState state;
  double residual_pop = 0.0;  // max |d rho / dt| over populations+coherences, 1/s
  double residual_n = 0.0;    // |dn/dt| / max(n, 1), 1/s
  double t_elapsed = 0.0;     // integrated model time, s
  long steps = 0;
  bool newton_polished = false;
};

class SolverTimeout : public std::runtime_error {
 public:
  SolverTimeout(const std::string& msg, SteadyResult last)
      : std::runtime_error(msg), last_result(std::move(last)) {}
  SteadyResult last_result;
};

class NumericalInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integrates from `init` with an adaptive embedded Runge-Kutta pair until
// max|d rho/dt| < tol and |dn/dt|/max(n,1) < tol, with a damped-Newton
// finisher once the transient has decayed. Throws SolverTimeout carrying the
// last state, or NumericalInstability on NaN / gross population excursions.
SteadyResult integrate_to_steady_state(const ModelParams& p, const SimState& init,
                                       const SolverOptions& opt = {});

enum class PhotonMode { simplified_delta0, full_delta };

// steady-state photon number; simplified mode forces Delta = 0
double steady_state_photon_number(const ModelParams& p, PhotonMode mode,
                                  const SolverOptions& opt = {});

// steady-state populations keyed by level label
std::map<std::string, double> population_snapshot(const ModelParams& p,
                                                  const SolverOptions& opt = {});

}  // namespace ilsim

#endif
