// ilsim - steady-state simulator for a tunable resonant/anti-resonant
// bad-cavity laser. See README.md for usage.
#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ilsim/constants.hpp"
#include "ilsim/figures.hpp"
#include "ilsim/linewidth.hpp"
#include "ilsim/pulling.hpp"
#include "ilsim/scenario.hpp"
#include "ilsim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

using namespace ilsim;
using namespace ilsim::constants;

// accepts plain radians or pi multiples: "pi", "0.5pi", "-1.5pi"
double parse_dphi(const std::string& text) {
  std::string s = text;
  bool times_pi = false;
  if (auto pos = s.find("pi"); pos != std::string::npos) {
    times_pi = true;
    s.erase(pos);
    if (s.empty() || s == "+") s = "1";
    if (s == "-") s = "-1";
  }
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad --dphi value: " + text);
  return times_pi ? v * pi : v;
}

struct CommonOpts {
  std::string config;
  double tol = 0.0;  // 0 = take from run config
  std::optional<double> intensity_mw_mm2;
  std::optional<double> temp_c;
};

RunConfig load_run(const CommonOpts& opts) {
  auto root = default_config_root();
  std::filesystem::path file = opts.config.empty()
                                   ? root / "run_default.json"
                                   : std::filesystem::path(opts.config);
  RunConfig rc = load_run_config(file, root);
  if (opts.tol > 0.0) rc.solver_tol = opts.tol;
  if (opts.intensity_mw_mm2) rc.pump.intensity = *opts.intensity_mw_mm2 * 1e3;
  if (opts.temp_c) rc.pump.temperature = *opts.temp_c + zero_celsius;
  return rc;
}

int cmd_simulate(const CommonOpts& opts, const std::string& dphi_text,
                 std::optional<double> detuning_mhz) {
  RunConfig rc = load_run(opts);
  Scenario sc(rc.atomic, rc.cavity, rc.pump);
  sc.solver.tol = rc.solver_tol;

  PhaseShift phi(0.0);
  if (detuning_mhz)
    phi = detuning_to_phase(*detuning_mhz * 1e6 * two_pi, sc.mode().fsr);
  else if (!dphi_text.empty())
    phi = PhaseShift(parse_dphi(dphi_text));

  ModelParams p = sc.params_at(phi);
  SteadyResult sr = integrate_to_steady_state(p, SimState::vacuum(), sc.solver);

  nlohmann::ordered_json rep;
  rep["delta_phi_rad"] = phi.radians();
  rep["eta"] = p.eta;
  rep["tau_s"] = photon_lifetime(p.eta, p.kappa0);
  rep["n"] = sr.state.n;
  rep["P_out_W"] = output_power(std::max(sr.state.n, 0.0), p.eta, p.kappa0,
                                sc.mode().coupling_fraction,
                                sc.system().lase_omega0());
  nlohmann::ordered_json pops;
  for (int i = 0; i < AtomicSystem::num_levels; ++i)
    pops[sc.system().levels[static_cast<std::size_t>(i)]] =
        sr.state.rho[static_cast<std::size_t>(i)];
  rep["populations"] = pops;
  rep["N_eff"] = sc.effective_atoms();
  rep["Omega_rad_s"] = sc.gain().omega_rabi;
  rep["g_rad_s"] = sc.gain().coupling;
  rep["Gamma_rad_s"] = sc.gain().gamma;
  rep["tau_cyc_s"] = sc.gain().tau_cyc;
  try {
    LinewidthParams lw = sc.thermal_linewidth_params(sr.state);
    rep["linewidth_Hz"] = linewidth_general(sr.state.n, lw, p.kappa0, p.eta);
    LinewidthParams lwc = sc.cold_linewidth_params(sr.state);
    rep["linewidth_cold_Hz"] =
        linewidth_homogeneous(sr.state.n, lwc, p.kappa0, p.eta);
  } catch (const NoInversionError&) {
    rep["linewidth_Hz"] = nullptr;
    rep["linewidth_cold_Hz"] = nullptr;
  }
  try {
    PullingContext ctx = sc.pulling_context(sr.state);
    rep["Delta_rad_s"] = pulling_selfconsistent(ctx, phi).delta;
  } catch (const std::exception&) {
    rep["Delta_rad_s"] = nullptr;
  }
  rep["Delta_closed_form_rad_s"] =
      pulling_shift(sc.gain().gamma, sc.mode().finesse, phi);
  rep["converged"] = true;
  rep["residual_per_s"] = std::max(sr.residual_pop, sr.residual_n);
  std::cout << rep.dump(2) << std::endl;
  return kExitOk;
}

int cmd_figure(const CommonOpts& opts, const std::string& name,
               const std::string& outdir, int workers,
               const std::string& format) {
  RunConfig rc = load_run(opts);
  run_figure(name, rc, outdir.empty() ? rc.output_dir.string() : outdir,
             workers, format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bad-cavity laser steady-state simulator (resonant to "
               "anti-resonant operation)"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string dphi_text;
  std::optional<double> detuning_mhz;
  std::string figure_name, outdir, format = "csv";
  int workers = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", common.config, "run config JSON path");
    cmd->add_option("--tol", common.tol, "steady-state residual tolerance, 1/s");
    cmd->add_option("--intensity-mw-mm2", common.intensity_mw_mm2,
                    "pump intensity, mW/mm^2");
    cmd->add_option("--temp-c", common.temp_c, "vapor cell temperature, C");
  };

  CLI::App* sim = app.add_subcommand("simulate", "single steady-state solve");
  add_common(sim);
  sim->add_option("--dphi", dphi_text,
                  "round-trip phase (rad, or pi multiples like 0.5pi)");
  sim->add_option("--detuning-mhz", detuning_mhz,
                  "cavity-frequency detuning from the atomic line, MHz");

  CLI::App* fig = app.add_subcommand("figure", "reproduce a dataset");
  add_common(fig);
  fig->add_option("name", figure_name, "dataset name")->required();
  fig->add_option("--out", outdir, "output directory");
  fig->add_option("--workers", workers, "parallel grid workers (0 = auto)");
  fig->add_option("--format", format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(common, dphi_text, detuning_mhz);
    if (fig->parsed()) return cmd_figure(common, figure_name, outdir, workers,
                                         format);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverTimeout& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NumericalInstability& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitConfig;
}
