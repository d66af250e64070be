#include "ilsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ilsim/constants.hpp"

namespace ilsim {

namespace {

// Gross-instability bounds. The exact transient of this model briefly takes
// rho11 to about -0.013 at full pump (coherent Rabi undershoot), so the guard
// must sit well below that while still catching a diverging integration.
constexpr double kPopLow = -0.05;
constexpr double kPopHigh = 1.05;
constexpr double kPhotonLow = -0.5;

struct Rates {
  double g21, g23, g25, g34, g36, g41, g54, g56, g61;
};

Rates load_rates(const AtomicSystem& sys) {
  return {sys.rate(2, 1), sys.rate(2, 3), sys.rate(2, 5),
          sys.rate(3, 4), sys.rate(3, 6), sys.rate(4, 1),
          sys.rate(5, 4), sys.rate(5, 6), sys.rate(6, 1)};
}

}  // namespace

SimState derivatives(const SimState& s, const ModelParams& p) {
  const Rates r = load_rates(*p.system);
  const double om = p.gain.omega_rabi;
  const double g = p.gain.coupling;
  const double delta = p.lasing_detuning;
  const double inv_tau = std::isfinite(p.gain.tau_cyc) && p.gain.tau_cyc > 0.0
                             ? 1.0 / p.gain.tau_cyc
                             : 0.0;

  // generalized Rabi factor; photon number floored at the vacuum for the
  // square root (trial states during stepping may dip slightly negative)
  const double np1 = std::max(s.n + 1.0, 0.0);
  const double gr = std::sqrt(delta * delta + 4.0 * g * g * np1);
  double rabi_fac = 1.0;
  if (gr > 0.0) {
    double q = 2.0 * g * std::sqrt(np1) / gr;
    rabi_fac = q * q;
  }
  auto burst = [&](double t) {
    double sn = std::sin(0.5 * gr * t);
    return rabi_fac * sn * sn * inv_tau;
  };
  const double w_pop = burst(p.gain.tau_cyc);  // population equations
  const double w_pho = burst(p.t_int);         // photon equation
  const double inv = s.rho[2] - s.rho[3];

  const double drive = p.coherence_drive == CoherenceDrive::population_difference
                           ? s.rho[0] - s.rho[1]
                           : s.rho[0] - s.rho12_im;

  SimState d;
  d.rho[0] = -om * s.rho12_im + r.g21 * s.rho[1] + r.g41 * s.rho[3] +
             r.g61 * s.rho[5];
  d.rho[1] = om * s.rho12_im - (r.g21 + r.g23 + r.g25) * s.rho[1];
  d.rho[2] = r.g23 * s.rho[1] - (r.g34 + r.g36) * s.rho[2] - w_pop * inv;
  d.rho[3] = r.g34 * s.rho[2] + r.g54 * s.rho[4] - r.g41 * s.rho[3] + w_pop * inv;
  d.rho[4] = r.g25 * s.rho[1] - (r.g54 + r.g56) * s.rho[4];
  d.rho[5] = r.g36 * s.rho[2] + r.g56 * s.rho[4] - r.g61 * s.rho[5];
  d.rho12_im = 0.5 * om * drive + s.rho12_re * p.pump_detuning -
               0.5 * r.g21 * s.rho12_im;
  d.rho12_re = -s.rho12_im * p.pump_detuning - 0.5 * r.g21 * s.rho12_re;
  d.n = p.effective_atoms * inv * w_pho - p.eta * p.kappa0 * s.n;
  return d;
}

double population_flow_imbalance(const SimState& s, const ModelParams& p) {
  SimState d = derivatives(s, p);
  double sum = 0.0;
  for (double v : d.rho) sum += v;
  return sum;
}

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

using Vec = std::array<double, SimState::dim>;

Vec to_vec(const SimState& s) {
  Vec v;
  for (int i = 0; i < SimState::dim; ++i) v[static_cast<std::size_t>(i)] = s[i];
  return v;
}
SimState to_state(const Vec& v) {
  SimState s;
  for (int i = 0; i < SimState::dim; ++i) s[i] = v[static_cast<std::size_t>(i)];
  return s;
}

Vec eval(const Vec& y, const ModelParams& p) {
  return to_vec(derivatives(to_state(y), p));
}

void check_sane(const Vec& y, double t) {
  for (int i = 0; i < SimState::dim; ++i) {
    double v = y[static_cast<std::size_t>(i)];
    if (!std::isfinite(v))
      throw NumericalInstability("non-finite state component at t = " +
                                 std::to_string(t));
    if (i < 6 && (v < kPopLow || v > kPopHigh))
      throw NumericalInstability("population excursion rho[" +
                                 std::to_string(i + 1) + "] = " +
                                 std::to_string(v) + " at t = " +
                                 std::to_string(t));
  }
  if (y[8] < kPhotonLow)
    throw NumericalInstability("photon number excursion n = " +
                               std::to_string(y[8]) + " at t = " +
                               std::to_string(t));
}

double rate_scale(const ModelParams& p) {
  const Rates r = load_rates(*p.system);
  double s = std::max({r.g21 + r.g23 + r.g25, r.g34 + r.g36, r.g41,
                       r.g54 + r.g56, r.g61});
  return std::max(s, p.gain.omega_rabi);
}

struct Residual {
  double pop;  // max |dy| over rho and coherences, 1/s
  double n;    // |dn| / max(n, 1), 1/s
};

Residual residual_of(const Vec& y, const Vec& f) {
  Residual res{0.0, 0.0};
  for (int i = 0; i < 8; ++i)
    res.pop = std::max(res.pop, std::abs(f[static_cast<std::size_t>(i)]));
  res.n = std::abs(f[8]) / std::max(y[8], 1.0);
  return res;
}

// Damped Newton on the steady-state system with the rho66 row replaced by the
// trace constraint (the flow Jacobian is singular along the trace direction).
bool newton_polish(Vec& y, const ModelParams& p, double tol) {
  auto F = [&](const Vec& v) {
    Vec f = eval(v, p);
    double tr = 0.0;
    for (int i = 0; i < 6; ++i) tr += v[static_cast<std::size_t>(i)];
    f[5] = tr - 1.0;
    return f;
  };
  Vec x = y;
  for (int it = 0; it < 80; ++it) {
    Vec fx = F(x);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      worst = std::max(worst, std::abs(fx[static_cast<std::size_t>(i)]));
    double res_n = std::abs(fx[8]) / std::max(x[8], 1.0);
    if (worst < 0.01 * tol && res_n < 0.01 * tol && std::abs(fx[5]) < 1e-12) {
      y = x;
      return true;
    }
    // finite-difference Jacobian, dense 9x9
    double J[9][9];
    for (int j = 0; j < 9; ++j) {
      double dx = std::max(1e-9, 1e-7 * std::abs(x[static_cast<std::size_t>(j)]));
      Vec xp = x;
      xp[static_cast<std::size_t>(j)] += dx;
      Vec fp = F(xp);
      for (int i = 0; i < 9; ++i)
        J[i][j] = (fp[static_cast<std::size_t>(i)] -
                   fx[static_cast<std::size_t>(i)]) / dx;
    }
    // solve J step = -fx by partial-pivot elimination
    double rhs[9];
    for (int i = 0; i < 9; ++i) rhs[i] = -fx[static_cast<std::size_t>(i)];
    for (int col = 0; col < 9; ++col) {
      int piv = col;
      for (int row = col + 1; row < 9; ++row)
        if (std::abs(J[row][col]) > std::abs(J[piv][col])) piv = row;
      if (std::abs(J[piv][col]) < 1e-300) return false;
      std::swap(J[col], J[piv]);
      std::swap(rhs[col], rhs[piv]);
      for (int row = col + 1; row < 9; ++row) {
        double m = J[row][col] / J[col][col];
        for (int k = col; k < 9; ++k) J[row][k] -= m * J[col][k];
        rhs[row] -= m * rhs[col];
      }
    }
    Vec step{};
    for (int i = 8; i >= 0; --i) {
      double acc = rhs[i];
      for (int k = i + 1; k < 9; ++k)
        acc -= J[i][k] * step[static_cast<std::size_t>(k)];
      step[static_cast<std::size_t>(i)] = acc / J[i][i];
    }
    double lam = 1.0;
    Vec trial{};
    for (; lam > 1e-4; lam *= 0.5) {
      bool ok = true;
      for (int i = 0; i < 9; ++i)
        trial[static_cast<std::size_t>(i)] =
            x[static_cast<std::size_t>(i)] + lam * step[static_cast<std::size_t>(i)];
      for (int i = 0; i < 6; ++i)
        if (trial[static_cast<std::size_t>(i)] < -1e-6 ||
            trial[static_cast<std::size_t>(i)] > 1.0 + 1e-6)
          ok = false;
      if (trial[8] < -0.5) ok = false;
      if (ok) break;
    }
    if (lam <= 1e-4) return false;
    x = trial;
  }
  return false;
}

}  // namespace

SteadyResult integrate_to_steady_state(const ModelParams& p, const SimState& init,
                                       const SolverOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
  if (p.system == nullptr)
    throw std::invalid_argument("solver: ModelParams.system not set");

  const double scale = rate_scale(p);
  const double newton_gate = 1e-4 * std::max(scale, 1.0);

  Vec y = to_vec(init);
  Vec f = eval(y, p);
  double t = 0.0, h = 1e-12;
  long steps = 0;
  int newton_tries = 0;

  auto make_result = [&](bool polished) {
    SteadyResult r;
    r.state = to_state(y);
    Vec fr = eval(y, p);
    Residual res = residual_of(y, fr);
    r.residual_pop = res.pop;
    r.residual_n = res.n;
    r.t_elapsed = t;
    r.steps = steps;
    r.newton_polished = polished;
    return r;
  };

  {
    Residual res = residual_of(y, f);
    if (res.pop < opt.tol && res.n < opt.tol) return make_result(false);
  }

  while (t < opt.t_max) {
    Vec k1 = f, k2, k3, k4, k5, k6, k7, y5;
    auto stage = [&](Vec& out, auto... terms) {
      for (int i = 0; i < 9; ++i) {
        auto idx = static_cast<std::size_t>(i);
        double acc = y[idx];
        ((acc += h * terms.first * terms.second[idx]), ...);
        out[idx] = acc;
      }
    };
    Vec tmp;
    stage(tmp, std::pair{A21, k1});
    k2 = eval(tmp, p);
    stage(tmp, std::pair{A31, k1}, std::pair{A32, k2});
    k3 = eval(tmp, p);
    stage(tmp, std::pair{A41, k1}, std::pair{A42, k2}, std::pair{A43, k3});
    k4 = eval(tmp, p);
    stage(tmp, std::pair{A51, k1}, std::pair{A52, k2}, std::pair{A53, k3},
          std::pair{A54, k4});
    k5 = eval(tmp, p);
    stage(tmp, std::pair{A61, k1}, std::pair{A62, k2}, std::pair{A63, k3},
          std::pair{A64, k4}, std::pair{A65, k5});
    k6 = eval(tmp, p);
    stage(y5, std::pair{B1, k1}, std::pair{B3, k3}, std::pair{B4, k4},
          std::pair{B5, k5}, std::pair{B6, k6});
    k7 = eval(y5, p);

    double err = 0.0;
    for (int i = 0; i < 9; ++i) {
      auto idx = static_cast<std::size_t>(i);
      double e = h * (E1 * k1[idx] + E3 * k3[idx] + E4 * k4[idx] +
                      E5 * k5[idx] + E6 * k6[idx] + E7 * k7[idx]);
      double atol = i == 8 ? opt.atol_n : opt.atol_pop;
      double sc = atol + opt.rtol * std::max(std::abs(y[idx]), std::abs(y5[idx]));
      err = std::max(err, std::abs(e) / sc);
    }

    if (err <= 1.0) {
      t += h;
      y = y5;
      f = k7;  // first-same-as-last
      ++steps;
      check_sane(y, t);
      Residual res = residual_of(y, f);
      if (res.pop < opt.tol && res.n < opt.tol) return make_result(false);
      if (res.pop < newton_gate && res.n < newton_gate && newton_tries < 24) {
        ++newton_tries;
        Vec yn = y;
        if (newton_polish(yn, p, opt.tol)) {
          y = yn;
          return make_result(true);
        }
      }
    }
    double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 4.0;
    h *= std::clamp(fac, 0.2, 4.0);
  }

  SteadyResult last = make_result(false);
  throw SolverTimeout("steady state not reached within t_max = " +
                          std::to_string(opt.t_max) + " s (residual " +
                          std::to_string(last.residual_pop) + " 1/s)",
                      last);
}

double steady_state_photon_number(const ModelParams& p, PhotonMode mode,
                                  const SolverOptions& opt) {
  ModelParams q = p;
  if (mode == PhotonMode::simplified_delta0) q.lasing_detuning = 0.0;
  return integrate_to_steady_state(q, SimState::vacuum(), opt).state.n;
}

std::map<std::string, double> population_snapshot(const ModelParams& p,
                                                  const SolverOptions& opt) {
  SteadyResult r = integrate_to_steady_state(p, SimState::vacuum(), opt);
  std::map<std::string, double> out;
  for (int i = 0; i < AtomicSystem::num_levels; ++i)
    out[p.system->levels[static_cast<std::size_t>(i)]] =
        r.state.rho[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace ilsim
