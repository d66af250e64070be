#include "ilsim/figures.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "ilsim/constants.hpp"
#include "ilsim/linewidth.hpp"
#include "ilsim/pulling.hpp"
#include "ilsim/sweep.hpp"

namespace ilsim {

using namespace constants;
namespace fs = std::filesystem;

namespace {

constexpr ReferencePoint kRef{};

Scenario make_scenario(const RunConfig& rc, double intensity, double temp_K,
                       bool pin_reference) {
  PumpVaporConfig pump = rc.pump;
  pump.intensity = intensity;
  pump.temperature = temp_K;
  Scenario sc(rc.atomic, rc.cavity, pump);
  sc.solver.tol = rc.solver_tol;
  if (pin_reference) {
    sc.pin_effective_atoms(kRef.n_eff);
    sc.pin_rabi_frequency(kRef.omega_rabi);
    sc.pin_coupling(kRef.coupling);
  }
  return sc;
}

SweepSpec base_spec(const RunConfig& rc, int workers) {
  SweepSpec spec;
  spec.system = rc.atomic;
  spec.cavity = rc.cavity;
  spec.pump = rc.pump;
  spec.solver.tol = rc.solver_tol;
  spec.workers = workers;
  return spec;
}

struct FigureOutput {
  std::vector<std::string> files;
  nlohmann::ordered_json extra;  // thresholds, slopes, ...
};

std::string join(const std::string& dir, const std::string& leaf) {
  return (fs::path(dir) / leaf).string();
}

// ---- individual figures ----

FigureOutput fig2a(const RunConfig& rc, const std::string& outdir, int workers,
                   const std::string& format) {
  SweepSpec spec = base_spec(rc, workers);
  spec.variable = SweepVariable::delta_phi;
  spec.lo = 0.0;
  spec.hi = two_pi;
  spec.count = 121;
  spec.neff_mode = NeffMode::fixed;
  spec.pinned_neff = kRef.n_eff;
  spec.pinned_rabi = kRef.omega_rabi;
  auto recs = run_sweep(spec);
  Scenario sc = make_scenario(rc, rc.pump.intensity, rc.pump.temperature, true);
  std::vector<std::vector<double>> rows;
  for (const auto& r : recs) {
    double eta = sc.eta(PhaseShift(r.x));
    rows.push_back({r.x, eta, photon_lifetime(eta, sc.mode().kappa0), r.n,
                    r.power, r.converged ? 1.0 : 0.0});
  }
  std::vector<ColumnSpec> cols = {{"delta_phi", "rad"}, {"eta", "1"},
                                  {"tau", "s"},         {"n", "1"},
                                  {"P_out", "W"},       {"converged", "bool"}};
  std::string path = join(outdir, "fig2a." + format);
  export_table(rows, cols, format, path);
  return {{path}, {}};
}

FigureOutput power_scan(const RunConfig& rc, const std::string& outdir,
                        int workers, const std::string& format,
                        SweepVariable var, const std::string& stem,
                        double lo, double hi, int count,
                        double th_res_lo, double th_res_hi,
                        double th_anti_lo, double th_anti_hi) {
  auto sweep_at = [&](double a, double b, int cnt, double dphi) {
    SweepSpec spec = base_spec(rc, workers);
    spec.variable = var;
    spec.lo = a;
    spec.hi = b;
    spec.count = cnt;
    spec.phi = PhaseShift(dphi);
    spec.neff_mode = NeffMode::recomputed_per_point;
    return run_sweep(spec);
  };
  auto res = sweep_at(lo, hi, count, 0.0);
  auto anti = sweep_at(lo, hi, count, pi);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < res.size(); ++i)
    rows.push_back({res[i].x, res[i].n, res[i].power, anti[i].n, anti[i].power});
  std::string xunit = var == SweepVariable::pump_intensity ? "W/m^2" : "K";
  std::vector<ColumnSpec> cols = {{"x", xunit},
                                  {"n_resonant", "1"},
                                  {"P_resonant", "W"},
                                  {"n_antiresonant", "1"},
                                  {"P_antiresonant", "W"}};
  std::string path = join(outdir, stem + "." + format);
  export_table(rows, cols, format, path);

  nlohmann::ordered_json extra;
  try {
    auto th = find_threshold(sweep_at(th_res_lo, th_res_hi, 25, 0.0));
    extra["threshold_resonant"] = th.threshold;
    extra["threshold_resonant_knee"] = th.knee;
  } catch (const ThresholdNotFound& e) {
    extra["threshold_resonant_error"] = e.what();
  }
  try {
    auto th = find_threshold(sweep_at(th_anti_lo, th_anti_hi, 25, pi));
    extra["threshold_antiresonant"] = th.threshold;
    extra["threshold_antiresonant_knee"] = th.knee;
  } catch (const ThresholdNotFound& e) {
    extra["threshold_antiresonant_error"] = e.what();
  }
  return {{path}, extra};
}

FigureOutput fig3b(const RunConfig& rc, const std::string& outdir, int,
                   const std::string& format) {
  const double temps_C[] = {100.0, 110.0, 120.0};
  Scenario ref = make_scenario(rc, rc.pump.intensity, 373.15, false);
  double fsr = ref.mode().fsr;
  const int count = 49;
  std::vector<std::vector<double>> rows(count);
  std::vector<ColumnSpec> cols = {{"detuning", "Hz"}, {"delta_phi", "rad"}};
  for (int i = 0; i < count; ++i) {
    double dphi = -pi + two_pi * i / (count - 1);
    rows[static_cast<std::size_t>(i)] = {dphi / two_pi * fsr, dphi};
  }
  nlohmann::ordered_json extra;
  for (double tc : temps_C) {
    Scenario sc = make_scenario(rc, rc.pump.intensity, tc + zero_celsius, false);
    SimState ref_state =
        integrate_to_steady_state(sc.params_at(PhaseShift(0.0)),
                                  SimState::vacuum(), sc.solver)
            .state;
    PullingContext ctx = sc.pulling_context(ref_state);
    std::string label = std::to_string(static_cast<int>(tc));
    cols.push_back({"Delta_T" + label, "rad/s"});
    for (int i = 0; i < count; ++i) {
      double dphi = rows[static_cast<std::size_t>(i)][1];
      double delta;
      try {
        delta = pulling_selfconsistent(ctx, PhaseShift(dphi)).delta;
      } catch (const std::exception&) {
        delta = std::nan("");
      }
      rows[static_cast<std::size_t>(i)].push_back(delta);
    }
    extra["slope_resonant_T" + label] =
        pulling_slope(ctx, PhaseShift(0.0));
    extra["slope_antiresonant_T" + label] =
        pulling_slope(ctx, PhaseShift(pi));
  }
  // closed-form spontaneous-emission shift for comparison
  cols.push_back({"Delta_closed_form", "rad/s"});
  for (int i = 0; i < count; ++i) {
    double dphi = rows[static_cast<std::size_t>(i)][1];
    rows[static_cast<std::size_t>(i)].push_back(pulling_shift(
        ref.gain().gamma, ref.mode().finesse, PhaseShift(dphi)));
  }
  std::string path = join(outdir, "fig3b." + format);
  export_table(rows, cols, format, path);
  return {{path}, extra};
}

FigureOutput expfig1(const RunConfig& rc, const std::string& outdir, int workers,
                     const std::string& format) {
  SweepSpec spec = base_spec(rc, workers);
  spec.variable = SweepVariable::delta_phi;
  spec.lo = 0.0;
  spec.hi = two_pi;
  spec.count = 41;
  spec.neff_mode = NeffMode::fixed;
  spec.pinned_neff = kRef.n_eff;
  spec.pinned_rabi = kRef.omega_rabi;
  // need populations, not just n: solve directly
  Scenario sc = make_scenario(rc, rc.pump.intensity, rc.pump.temperature, true);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < spec.count; ++i) {
    double dphi = spec.lo + (spec.hi - spec.lo) * i / (spec.count - 1);
    auto sr = integrate_to_steady_state(sc.params_at(PhaseShift(dphi)),
                                        SimState::vacuum(), sc.solver);
    std::vector<double> row = {dphi};
    for (double p : sr.state.rho) row.push_back(p);
    row.push_back(sr.state.n);
    rows.push_back(row);
  }
  std::vector<ColumnSpec> cols = {{"delta_phi", "rad"}, {"rho11", "1"},
                                  {"rho22", "1"},       {"rho33", "1"},
                                  {"rho44", "1"},       {"rho55", "1"},
                                  {"rho66", "1"},       {"n", "1"}};
  std::string path = join(outdir, "expfig1." + format);
  export_table(rows, cols, format, path);
  return {{path}, {}};
}

FigureOutput expfig2(const RunConfig& rc, const std::string& outdir, int,
                     const std::string& format) {
  Scenario sc = make_scenario(rc, rc.pump.intensity, rc.pump.temperature, true);
  SimState ref_state =
      integrate_to_steady_state(sc.params_at(PhaseShift(0.0)),
                                SimState::vacuum(), sc.solver)
          .state;
  PullingContext ctx = sc.pulling_context(ref_state);
  const int count = 81;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < count; ++i) {
    double dphi = two_pi * i / (count - 1);
    PhaseShift phi(dphi);
    double n0 = steady_state_photon_number(sc.params_at(phi),
                                           PhotonMode::simplified_delta0,
                                           sc.solver);
    double delta = pulling_selfconsistent(ctx, phi).delta;
    double nfull = steady_state_photon_number(sc.params_at(phi, delta),
                                              PhotonMode::full_delta, sc.solver);
    rows.push_back({dphi, n0, nfull, n0 - nfull, delta});
  }
  std::vector<ColumnSpec> cols = {{"delta_phi", "rad"},
                                  {"n_delta0", "1"},
                                  {"n_full", "1"},
                                  {"difference", "1"},
                                  {"Delta", "rad/s"}};
  std::string path = join(outdir, "expfig2." + format);
  export_table(rows, cols, format, path);
  return {{path}, {}};
}

FigureOutput expfig3(const RunConfig& rc, const std::string& outdir, int,
                     const std::string& format) {
  std::vector<std::vector<double>> rows_a;
  for (int i = 0; i <= 60; ++i) {
    double I_mw = 0.2 + (12.0 - 0.2) * i / 60.0;
    Scenario sc = make_scenario(rc, I_mw * 1e3, 373.15, false);
    rows_a.push_back({I_mw * 1e3, sc.gain().effective_atoms,
                      sc.gain().omega_rabi});
  }
  std::string path_a = join(outdir, "expfig3a." + format);
  export_table(rows_a,
               {{"intensity", "W/m^2"}, {"N_eff", "1"}, {"Omega", "rad/s"}},
               format, path_a);
  std::vector<std::vector<double>> rows_b;
  for (int i = 0; i <= 60; ++i) {
    double t_C = 60.0 + (130.0 - 60.0) * i / 60.0;
    Scenario sc = make_scenario(rc, rc.pump.intensity, t_C + zero_celsius, false);
    rows_b.push_back({t_C + zero_celsius, sc.gain().effective_atoms});
  }
  std::string path_b = join(outdir, "expfig3b." + format);
  export_table(rows_b, {{"temperature", "K"}, {"N_eff", "1"}}, format, path_b);
  return {{path_a, path_b}, {}};
}

FigureOutput expfig4(const RunConfig& rc, const std::string& outdir, int workers,
                     const std::string& format) {
  auto scan = [&](double refl) {
    SweepSpec spec = base_spec(rc, workers);
    spec.variable = SweepVariable::delta_phi;
    spec.lo = 0.0;
    spec.hi = two_pi;
    spec.count = 81;
    spec.neff_mode = NeffMode::fixed;
    spec.pinned_neff = kRef.n_eff;
    spec.pinned_rabi = kRef.omega_rabi;
    spec.cavity.refl1 = spec.cavity.refl2 = refl;
    spec.cavity.kappa0_measured.reset();  // mirror set varies; derive losses
    spec.cavity.finesse_override.reset();
    return run_sweep(spec);
  };
  auto low = scan(rc.cavity.refl1);
  auto high = scan(0.80);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < low.size(); ++i)
    rows.push_back({low[i].x, low[i].n, high[i].n});
  std::vector<ColumnSpec> cols = {{"delta_phi", "rad"},
                                  {"n_R_shipped", "1"},
                                  {"n_R_080", "1"}};
  std::string path = join(outdir, "expfig4." + format);
  export_table(rows, cols, format, path);
  return {{path}, {}};
}

FigureOutput expfig5(const RunConfig& rc, const std::string& outdir, int,
                     const std::string& format) {
  Scenario sc = make_scenario(rc, rc.pump.intensity, rc.pump.temperature, true);
  const int count = 81;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < count; ++i) {
    double dphi = two_pi * i / (count - 1);
    PhaseShift phi(dphi);
    double eta = sc.eta(phi);
    auto sr = integrate_to_steady_state(sc.params_at(phi), SimState::vacuum(),
                                        sc.solver);
    double thermal = std::nan(""), cold = std::nan("");
    try {
      LinewidthParams lw = sc.thermal_linewidth_params(sr.state);
      thermal = linewidth_general(sr.state.n, lw, sc.mode().kappa0, eta);
      LinewidthParams lwc = sc.cold_linewidth_params(sr.state);
      cold = linewidth_homogeneous(sr.state.n, lwc, sc.mode().kappa0, eta);
    } catch (const NoInversionError&) {
    }
    rows.push_back({dphi, sr.state.n, thermal, cold});
  }
  std::vector<ColumnSpec> cols = {{"delta_phi", "rad"},
                                  {"n", "1"},
                                  {"linewidth_thermal", "Hz"},
                                  {"linewidth_cold", "Hz"}};
  std::string path = join(outdir, "expfig5." + format);
  export_table(rows, cols, format, path);
  return {{path}, {}};
}

FigureOutput table1(const RunConfig& rc, const std::string& outdir, int,
                    const std::string& /*format: always csv name,value*/) {
  Scenario sc = make_scenario(rc, rc.pump.intensity, 373.15, false);
  double gamma = sc.gain().gamma;
  double kappa0 = sc.mode().kappa0;
  double finesse = sc.mode().finesse;
  auto coeff = pulling_coefficient_table(gamma, kappa0, finesse);
  // analytic slopes of the closed-form shift, expressed against omega_c
  double q = 2.0 * finesse / pi;
  double slope_res_cf = 0.25 * gamma * q * q / sc.mode().fsr;
  double slope_anti_cf = -slope_res_cf / (1.0 + q * q);

  nlohmann::ordered_json extra;
  std::vector<std::pair<std::string, double>> entries;
  auto add = [&](const std::string& name, double v) {
    extra[name] = v;
    entries.emplace_back(name, v);
  };
  add("stimulated_resonant_formula", coeff.resonant);
  add("stimulated_antiresonant_formula", coeff.antiresonant);
  add("closed_form_slope_resonant", slope_res_cf);
  add("closed_form_slope_antiresonant", slope_anti_cf);
  for (double tc : {100.0, 120.0}) {
    Scenario st = make_scenario(rc, rc.pump.intensity, tc + zero_celsius, false);
    SimState ref_state =
        integrate_to_steady_state(st.params_at(PhaseShift(0.0)),
                                  SimState::vacuum(), st.solver)
            .state;
    PullingContext ctx = st.pulling_context(ref_state);
    std::string label = std::to_string(static_cast<int>(tc));
    add("simulated_slope_resonant_T" + label,
        pulling_slope(ctx, PhaseShift(0.0)));
    add("simulated_slope_antiresonant_T" + label,
        pulling_slope(ctx, PhaseShift(pi)));
  }
  std::string path = join(outdir, "table1.csv");
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "quantity,value\r\n";
    char buf[40];
    for (const auto& [k, v] : entries) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << k << "," << buf << "\r\n";
    }
  }
  return {{path}, extra};
}

}  // namespace

std::vector<std::string> figure_names() {
  return {"fig2a",   "fig2b",   "fig2c",   "fig3b",   "expfig1",
          "expfig2", "expfig3", "expfig4", "expfig5", "table1"};
}

void run_figure(const std::string& name, const RunConfig& rc,
                const std::string& outdir, int workers,
                const std::string& format) {
  fs::create_directories(outdir);
  FigureOutput out;
  if (name == "fig2a") {
    out = fig2a(rc, outdir, workers, format);
  } else if (name == "fig2b") {
    out = power_scan(rc, outdir, workers, format, SweepVariable::pump_intensity,
                     "fig2b", 50.0, 12000.0, 49, 50.0, 900.0, 1000.0, 12000.0);
  } else if (name == "fig2c") {
    out = power_scan(rc, outdir, workers, format,
                     SweepVariable::cell_temperature, "fig2c", 328.15, 385.15,
                     49, 328.15, 363.15, 353.15, 385.15);
  } else if (name == "fig3b") {
    out = fig3b(rc, outdir, workers, format);
  } else if (name == "expfig1") {
    out = expfig1(rc, outdir, workers, format);
  } else if (name == "expfig2") {
    out = expfig2(rc, outdir, workers, format);
  } else if (name == "expfig3") {
    out = expfig3(rc, outdir, workers, format);
  } else if (name == "expfig4") {
    out = expfig4(rc, outdir, workers, format);
  } else if (name == "expfig5") {
    out = expfig5(rc, outdir, workers, format);
  } else if (name == "table1") {
    out = table1(rc, outdir, workers, format);
  } else {
    std::string known;
    for (const auto& f : figure_names()) known += " " + f;
    throw ConfigError("unknown figure '" + name + "'; valid names:" + known);
  }
  nlohmann::ordered_json manifest;
  manifest["figure"] = name;
  manifest["files"] = out.files;
  manifest["config_digest"] = rc.config_digest;
  manifest["solver_tol"] = rc.solver_tol;
  if (!out.extra.empty()) manifest["results"] = out.extra;
  std::ofstream mf(join(outdir, name + ".manifest.json"), std::ios::binary);
  if (!mf) throw std::runtime_error("cannot write manifest for " + name);
  mf << manifest.dump(2) << "\n";
}

}  // namespace ilsim
