#ifndef ILSIM_SCENARIO_HPP
#define ILSIM_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "ilsim/atomic.hpp"
#include "ilsim/cavity.hpp"
#include "ilsim/dynamics.hpp"
#include "ilsim/gain.hpp"
#include "ilsim/linewidth.hpp"
#include "ilsim/pulling.hpp"

namespace ilsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One fully assembled operating point of the laser model.
class Scenario {
 public:
  Scenario(AtomicSystem sys, CavityConfig cavity_cfg, PumpVaporConfig pump);

  const AtomicSystem& system() const { return system_; }
  const CavityConfig& cavity_config() const { return cavity_cfg_; }
  const CavityMode& mode() const { return mode_; }
  const PumpVaporConfig& pump() const { return pump_; }
  const GainParams& gain() const { return gain_; }

  // reference operating points pin these (figure reproductions); otherwise
  // the full chain derives them
  void pin_effective_atoms(double n_eff);
  void pin_rabi_frequency(double omega);
  void pin_coupling(double g);
  double effective_atoms() const;

  double eta(const PhaseShift& phi) const;
  ModelParams params_at(const PhaseShift& phi, double lasing_detuning = 0.0) const;

  LinewidthParams thermal_linewidth_params(const SimState& state) const;
  LinewidthParams cold_linewidth_params(const SimState& state,
                                        double temperature_cold = 200e-6) const;

  PullingContext pulling_context(const SimState& reference_state) const;

  CoherenceDrive coherence_drive = CoherenceDrive::population_difference;
  SolverOptions solver;

 private:
  AtomicSystem system_;
  CavityConfig cavity_cfg_;
  PumpVaporConfig pump_;
  CavityMode mode_;
  GainParams gain_;
  std::optional<double> pinned_neff_;
};

// -------- JSON configuration --------

// atomic config: decay_rates {"21": s^-1, ...}, wavelengths_nm {pump, lase},
// dipole_moment_Cm, mass_kg, tau_cyc_us (optional), t_int_ns, vapor {...}
AtomicSystem load_atomic_config(const std::filesystem::path& file);

// cavity config: L_mm, r_mm, R1, R2, L_cell_mm, optional
// kappa0_MHz_over_2pi, optional finesse_override, coupling_fraction
CavityConfig load_cavity_config(const std::filesystem::path& file);

struct RunConfig {
  std::filesystem::path atomic_path;
  std::filesystem::path cavity_path;
  AtomicSystem atomic;
  CavityConfig cavity;
  PumpVaporConfig pump;  // lab-unit overrides already converted to SI
  double solver_tol = 10.0;  // 1/s
  std::filesystem::path output_dir = ".";
  std::string config_digest;  // hash over the loaded JSON documents
};

// Loads a run config naming the atomic/cavity files. Relative paths resolve
// against the run config's directory, then against `config_root`.
RunConfig load_run_config(const std::filesystem::path& file,
                          const std::filesystem::path& config_root);

// Default config root: $ILSIM_CONFIG_DIR if set, else ./configs
std::filesystem::path default_config_root();

// FNV-1a over file bytes, hex string; stable across runs
std::string digest_file(const std::filesystem::path& file);

}  // namespace ilsim

#endif
