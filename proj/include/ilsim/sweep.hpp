#ifndef ILSIM_SWEEP_HPP
#define ILSIM_SWEEP_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ilsim/scenario.hpp"

namespace ilsim {

enum class SweepVariable {
  delta_phi,         // rad
  pump_intensity,    // W/m^2
  cell_temperature,  // K
  reflectivity,      // both mirrors; kappa0 and finesse derived from R
};

enum class NeffMode { fixed, recomputed_per_point };

struct SweepSpec {
  SweepVariable variable = SweepVariable::delta_phi;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;  // >= 2
  // base operating point; the swept variable overrides the matching field
  AtomicSystem system;
  CavityConfig cavity;
  PumpVaporConfig pump;
  PhaseShift phi;  // fixed phase for non-phase sweeps
  NeffMode neff_mode = NeffMode::recomputed_per_point;
  double pinned_neff = 0.0;   // used when neff_mode == fixed
  double pinned_rabi = 0.0;   // optional Omega override (0 = derive from I)
  SolverOptions solver;
  int workers = 0;  // 0 = hardware concurrency

  void validate() const;  // throws std::invalid_argument
};

struct SweepRecord {
  double x = 0.0;          // swept variable value (SI)
  double n = 0.0;          // photon number
  double power = 0.0;      // W
  double delta = 0.0;      // rad/s lasing shift (0 unless filled by caller)
  double linewidth = 0.0;  // Hz (0 unless filled)
  bool converged = false;
  double residual = 0.0;   // 1/s
};

// One steady-state solve per grid point, in parallel; output ordered by x.
// Per-point solver failures are recorded in-row, never thrown.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

struct ThresholdResult {
  double threshold = 0.0;  // zero-intercept of the upper-half linear fit
  double knee = 0.0;       // x of max second difference, diagnostic
  double slope = 0.0;
  double intercept = 0.0;
};

class ThresholdNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear fit over the upper 50% (by x) of P(x); threshold = zero intercept.
// Throws ThresholdNotFound when the curve shows no threshold behavior
// (non-positive fitted slope, intercept outside the sweep, or no curvature).
ThresholdResult find_threshold(const std::vector<SweepRecord>& records);

struct ColumnSpec {
  std::string name;
  std::string unit;
};

// RFC-4180 CSV (CRLF, header row), values printed with %.17g; byte-stable.
void export_csv(const std::vector<SweepRecord>& records,
                const std::vector<ColumnSpec>& columns, std::ostream& out);
void export_jsonl(const std::vector<SweepRecord>& records,
                  const std::vector<ColumnSpec>& columns, std::ostream& out);
// writes <path> and sidecar <path>.schema.json naming columns and units
void export_records(const std::vector<SweepRecord>& records,
                    const std::vector<ColumnSpec>& columns,
                    const std::string& format, const std::string& path);

// generic table export used by the figure commands
void export_table_csv(const std::vector<std::vector<double>>& rows,
                      const std::vector<ColumnSpec>& columns, std::ostream& out);
void export_table(const std::vector<std::vector<double>>& rows,
                  const std::vector<ColumnSpec>& columns,
                  const std::string& format, const std::string& path);

std::vector<ColumnSpec> default_sweep_columns(SweepVariable v);

}  // namespace ilsim

#endif
