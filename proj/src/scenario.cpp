#include "ilsim/scenario.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ilsim/constants.hpp"

namespace ilsim {

using namespace constants;
using nlohmann::json;

Scenario::Scenario(AtomicSystem sys, CavityConfig cavity_cfg, PumpVaporConfig pump)
    : system_(std::move(sys)), cavity_cfg_(cavity_cfg), pump_(pump) {
  system_.validate();
  mode_ = mode_from_geometry(cavity_cfg_, system_.lambda_lase);
  gain_ = gain_chain(pump_, system_, mode_);
}

void Scenario::pin_effective_atoms(double n_eff) { pinned_neff_ = n_eff; }

void Scenario::pin_rabi_frequency(double omega) {
  gain_.omega_rabi = omega;
  gain_.tau_cyc = pump_cycle_time(omega, system_);
}

void Scenario::pin_coupling(double g) { gain_.coupling = g; }

double Scenario::effective_atoms() const {
  return pinned_neff_.value_or(gain_.effective_atoms);
}

double Scenario::eta(const PhaseShift& phi) const {
  return loss_coefficient(mode_.finesse, phi);
}

ModelParams Scenario::params_at(const PhaseShift& phi,
                                double lasing_detuning) const {
  ModelParams p;
  p.gain = gain_;
  p.eta = eta(phi);
  p.kappa0 = mode_.kappa0;
  p.lasing_detuning = lasing_detuning;
  p.pump_detuning = pump_.pump_detuning;
  p.t_int = system_.t_int;
  p.effective_atoms = effective_atoms();
  p.system = &system_;
  p.coherence_drive = coherence_drive;
  return p;
}

LinewidthParams Scenario::thermal_linewidth_params(const SimState& state) const {
  double dw = doppler_width_thermal(gain_.delta_v, system_.lase_omega0());
  return linewidth_params_from_state(state, gain_, dw, gain_.gamma);
}

LinewidthParams Scenario::cold_linewidth_params(const SimState& state,
                                                double temperature_cold) const {
  double dw = doppler_width_cold(temperature_cold, system_.atomic_mass,
                                 system_.lase_omega0());
  LinewidthParams lw =
      linewidth_params_from_state(state, gain_, dw, /*gamma=*/0.0);
  lw.gamma = lw.gamma_eg;  // Doppler-free: dipole decay is the natural width
  return lw;
}

PullingContext Scenario::pulling_context(const SimState& reference_state) const {
  PullingContext ctx;
  ctx.params = params_at(PhaseShift(0.0));
  ctx.finesse = mode_.finesse;
  ctx.round_trip_time = mode_.round_trip_time;
  LinewidthParams lw = thermal_linewidth_params(reference_state);
  ctx.alpha = lw.alpha;
  ctx.n_sat = lw.n_sat;
  ctx.solver = solver;
  return ctx;
}

// -------- JSON loading --------

namespace {

json parse_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + file.string() + ": " + e.what());
  }
  return j;
}

double require_number(const json& j, const std::string& key,
                      const std::string& file) {
  if (!j.contains(key))
    throw ConfigError("missing key '" + key + "' in " + file);
  if (!j[key].is_number())
    throw ConfigError("key '" + key + "' must be a number in " + file);
  return j[key].get<double>();
}

}  // namespace

AtomicSystem load_atomic_config(const std::filesystem::path& file) {
  json j = parse_file(file);
  AtomicSystem sys;
  sys.decay_rates.clear();
  if (!j.contains("decay_rates") || !j["decay_rates"].is_object())
    throw ConfigError("missing 'decay_rates' object in " + file.string());
  for (auto& [key, val] : j["decay_rates"].items()) {
    if (key.size() != 2 || !isdigit(static_cast<unsigned char>(key[0])) ||
        !isdigit(static_cast<unsigned char>(key[1])))
      throw ConfigError("decay_rates key '" + key + "' must be two digits");
    sys.decay_rates[{key[0] - '0', key[1] - '0'}] = val.get<double>();
  }
  const auto& w = j.at("wavelengths_nm");
  sys.lambda_pump = w.at("pump").get<double>() * 1e-9;
  sys.lambda_lase = w.at("lase").get<double>() * 1e-9;
  sys.dipole_moment = require_number(j, "dipole_moment_Cm", file.string());
  sys.atomic_mass = require_number(j, "mass_kg", file.string());
  sys.t_int = require_number(j, "t_int_ns", file.string()) * 1e-9;
  if (j.contains("tau_cyc_us") && !j["tau_cyc_us"].is_null())
    sys.tau_cyc_fixed = j["tau_cyc_us"].get<double>() * 1e-6;
  if (j.contains("vapor")) {
    const auto& v = j["vapor"];
    sys.vapor_a = v.value("log10_p_atm_a", sys.vapor_a);
    sys.vapor_b = v.value("log10_p_atm_b_K", sys.vapor_b);
    sys.calibration_density =
        v.value("calibration_density_per_m3", sys.calibration_density);
    sys.calibration_temperature =
        v.value("calibration_temperature_K", sys.calibration_temperature);
  }
  sys.validate();
  return sys;
}

CavityConfig load_cavity_config(const std::filesystem::path& file) {
  json j = parse_file(file);
  CavityConfig c;
  c.length = require_number(j, "L_mm", file.string()) * 1e-3;
  c.curvature = require_number(j, "r_mm", file.string()) * 1e-3;
  c.refl1 = require_number(j, "R1", file.string());
  c.refl2 = require_number(j, "R2", file.string());
  c.cell_length = require_number(j, "L_cell_mm", file.string()) * 1e-3;
  if (j.contains("kappa0_MHz_over_2pi") && !j["kappa0_MHz_over_2pi"].is_null())
    c.kappa0_measured = j["kappa0_MHz_over_2pi"].get<double>() * 1e6 * two_pi;
  if (j.contains("finesse_override") && !j["finesse_override"].is_null())
    c.finesse_override = j["finesse_override"].get<double>();
  c.coupling_fraction = j.value("coupling_fraction", 0.5);
  return c;
}

std::filesystem::path default_config_root() {
  if (const char* env = std::getenv("ILSIM_CONFIG_DIR"); env && *env)
    return env;
  return "configs";
}

namespace {

std::filesystem::path resolve(const std::string& name,
                              const std::filesystem::path& run_dir,
                              const std::filesystem::path& config_root) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  if (std::filesystem::exists(run_dir / p)) return run_dir / p;
  if (std::filesystem::exists(config_root / p)) return config_root / p;
  return run_dir / p;  // let the open fail with this path in the message
}

}  // namespace

std::string digest_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open file for digest: " + file.string());
  unsigned long long h = 1469598103934665603ull;  // FNV-1a 64
  char ch;
  while (in.get(ch)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

RunConfig load_run_config(const std::filesystem::path& file,
                          const std::filesystem::path& config_root) {
  json j = parse_file(file);
  RunConfig rc;
  auto run_dir = file.has_parent_path() ? file.parent_path()
                                        : std::filesystem::path(".");
  rc.atomic_path = resolve(j.value("atomic_config", "cs_default.json"),
                           run_dir, config_root);
  rc.cavity_path = resolve(j.value("cavity_config", "cavity_default.json"),
                           run_dir, config_root);
  rc.atomic = load_atomic_config(rc.atomic_path);
  rc.cavity = load_cavity_config(rc.cavity_path);
  if (j.contains("pump")) {
    const auto& p = j["pump"];
    if (p.contains("intensity_mW_mm2"))
      rc.pump.intensity = p["intensity_mW_mm2"].get<double>() * 1e3;
    if (p.contains("temperature_C"))
      rc.pump.temperature = p["temperature_C"].get<double>() + zero_celsius;
    if (p.contains("pump_detuning_MHz"))
      rc.pump.pump_detuning = p["pump_detuning_MHz"].get<double>() * 1e6 * two_pi;
  }
  rc.solver_tol = j.value("solver_tol", 10.0);
  if (!(rc.solver_tol > 0.0))
    throw ConfigError("solver_tol must be positive in " + file.string());
  rc.output_dir = j.value("output_dir", ".");
  rc.config_digest = digest_file(file) + "-" + digest_file(rc.atomic_path) +
                     "-" + digest_file(rc.cavity_path);
  return rc;
}

}  // namespace ilsim
