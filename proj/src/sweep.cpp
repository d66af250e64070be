#include "ilsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "ilsim/constants.hpp"
#include "ilsim/linewidth.hpp"

namespace ilsim {

using namespace constants;

void SweepSpec::validate() const {
  if (count < 2) throw std::invalid_argument("sweep: count must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("sweep: need lo < hi");
  switch (variable) {
    case SweepVariable::delta_phi:
      break;
    case SweepVariable::pump_intensity:
      if (lo < 0.0) throw std::invalid_argument("sweep: intensity must be >= 0");
      break;
    case SweepVariable::cell_temperature:
      if (!(lo > 273.0 && hi < 500.0))
        throw std::invalid_argument("sweep: temperature outside vapor model domain");
      break;
    case SweepVariable::reflectivity:
      if (!(lo > 0.0 && hi < 1.0))
        throw std::invalid_argument("sweep: reflectivity must lie in (0, 1)");
      break;
  }
  if (neff_mode == NeffMode::fixed && !(pinned_neff > 0.0))
    throw std::invalid_argument("sweep: fixed Neff mode needs pinned_neff > 0");
}

namespace {

SweepRecord solve_point(const SweepSpec& spec, double x) {
  SweepRecord rec;
  rec.x = x;
  try {
    PumpVaporConfig pump = spec.pump;
    CavityConfig cav = spec.cavity;
    PhaseShift phi = spec.phi;
    switch (spec.variable) {
      case SweepVariable::delta_phi:
        phi = PhaseShift(x);
        break;
      case SweepVariable::pump_intensity:
        pump.intensity = x;
        break;
      case SweepVariable::cell_temperature:
        pump.temperature = x;
        break;
      case SweepVariable::reflectivity:
        cav.refl1 = cav.refl2 = x;
        // mirror set changes: derive loss and finesse from R, not from the
        // measured override of the shipped pair
        cav.kappa0_measured.reset();
        cav.finesse_override.reset();
        break;
    }
    Scenario sc(spec.system, cav, pump);
    sc.solver = spec.solver;
    if (spec.neff_mode == NeffMode::fixed) sc.pin_effective_atoms(spec.pinned_neff);
    if (spec.pinned_rabi > 0.0) sc.pin_rabi_frequency(spec.pinned_rabi);
    ModelParams p = sc.params_at(phi);
    SteadyResult sr = integrate_to_steady_state(p, SimState::vacuum(), spec.solver);
    rec.n = sr.state.n;
    rec.power = output_power(std::max(rec.n, 0.0), p.eta, p.kappa0,
                             sc.mode().coupling_fraction,
                             sc.system().lase_omega0());
    rec.converged = true;
    rec.residual = std::max(sr.residual_pop, sr.residual_n);
  } catch (const SolverTimeout& e) {
    rec.converged = false;
    rec.residual =
        std::max(e.last_result.residual_pop, e.last_result.residual_n);
    rec.n = e.last_result.state.n;
  } catch (const std::exception&) {
    rec.converged = false;
    rec.residual = std::numeric_limits<double>::infinity();
  }
  return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int count = spec.count;
  std::vector<SweepRecord> out(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, count));
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      double x = spec.lo + (spec.hi - spec.lo) * i / (count - 1);
      out[static_cast<std::size_t>(i)] = solve_point(spec, x);
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

ThresholdResult find_threshold(const std::vector<SweepRecord>& records) {
  if (records.size() < 4)
    throw ThresholdNotFound("threshold: need at least 4 points");
  double xlo = records.front().x, xhi = records.back().x;
  double xcut = 0.5 * (xlo + xhi);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : records) {
    if (r.x < xcut || !r.converged) continue;
    sx += r.x;
    sy += r.power;
    sxx += r.x * r.x;
    sxy += r.x * r.power;
    ++m;
  }
  if (m < 2) throw ThresholdNotFound("threshold: too few converged points");
  double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-300)
    throw ThresholdNotFound("threshold: degenerate fit");
  ThresholdResult res;
  res.slope = (m * sxy - sx * sy) / denom;
  res.intercept = (sy * sxx - sx * sxy) / denom;
  double pmax = 0.0;
  for (const auto& r : records) pmax = std::max(pmax, r.power);
  if (!(res.slope > 0.0) || pmax <= 0.0)
    throw ThresholdNotFound("threshold: no rising branch in range");
  res.threshold = -res.intercept / res.slope;
  if (!(res.threshold >= xlo && res.threshold <= xhi))
    throw ThresholdNotFound("threshold: intercept outside sweep range");
  // knee diagnostic: max second difference of P(x)
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    double d2 = records[i + 1].power - 2.0 * records[i].power +
                records[i - 1].power;
    if (d2 > best) {
      best = d2;
      res.knee = records[i].x;
    }
  }
  if (!(best > 0.0))
    throw ThresholdNotFound("threshold: curve has no convex knee");
  return res;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> record_rows(
    const std::vector<SweepRecord>& records) {
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto& r : records)
    rows.push_back({r.x, r.n, r.power, r.delta, r.linewidth,
                    r.converged ? 1.0 : 0.0, r.residual});
  return rows;
}

}  // namespace

void export_table_csv(const std::vector<std::vector<double>>& rows,
                      const std::vector<ColumnSpec>& columns,
                      std::ostream& out) {
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].name;
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << fmt(row[c]);
    out << "\r\n";
  }
}

void export_csv(const std::vector<SweepRecord>& records,
                const std::vector<ColumnSpec>& columns, std::ostream& out) {
  export_table_csv(record_rows(records), columns, out);
}

void export_jsonl(const std::vector<SweepRecord>& records,
                  const std::vector<ColumnSpec>& columns, std::ostream& out) {
  auto rows = record_rows(records);
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    for (std::size_t c = 0; c < row.size() && c < columns.size(); ++c)
      j[columns[c].name] = row[c];
    out << j.dump() << "\n";
  }
}

namespace {

void write_schema(const std::vector<ColumnSpec>& columns,
                  const std::string& path) {
  nlohmann::ordered_json schema;
  schema["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : columns)
    schema["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  schema["value_format"] = "%.17g";
  std::ofstream out(path + ".schema.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path + ".schema.json");
  out << schema.dump(2) << "\n";
}

}  // namespace

void export_records(const std::vector<SweepRecord>& records,
                    const std::vector<ColumnSpec>& columns,
                    const std::string& format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (format == "csv") {
    export_csv(records, columns, out);
  } else if (format == "jsonl") {
    export_jsonl(records, columns, out);
  } else {
    throw std::invalid_argument("unknown export format: " + format);
  }
  write_schema(columns, path);
}

void export_table(const std::vector<std::vector<double>>& rows,
                  const std::vector<ColumnSpec>& columns,
                  const std::string& format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (format == "csv") {
    export_table_csv(rows, columns, out);
  } else if (format == "jsonl") {
    for (const auto& row : rows) {
      nlohmann::ordered_json j;
      for (std::size_t c = 0; c < row.size() && c < columns.size(); ++c)
        j[columns[c].name] = row[c];
      out << j.dump() << "\n";
    }
  } else {
    throw std::invalid_argument("unknown export format: " + format);
  }
  write_schema(columns, path);
}

std::vector<ColumnSpec> default_sweep_columns(SweepVariable v) {
  std::string xname, xunit;
  switch (v) {
    case SweepVariable::delta_phi: xname = "delta_phi"; xunit = "rad"; break;
    case SweepVariable::pump_intensity: xname = "intensity"; xunit = "W/m^2"; break;
    case SweepVariable::cell_temperature: xname = "temperature"; xunit = "K"; break;
    case SweepVariable::reflectivity: xname = "reflectivity"; xunit = "1"; break;
  }
  return {{xname, xunit},      {"n", "1"},          {"P_out", "W"},
          {"Delta", "rad/s"},  {"linewidth", "Hz"}, {"converged", "bool"},
          {"residual", "1/s"}};
}

}  // namespace ilsim
