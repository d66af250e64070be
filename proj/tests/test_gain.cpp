#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <random>

#include "ilsim/constants.hpp"
#include "ilsim/gain.hpp"

using namespace ilsim;
using namespace ilsim::constants;

namespace {
CavityMode shipped_mode() {
  CavityConfig c;
  c.kappa0_measured = two_pi * 257e6;
  return mode_from_geometry(c, 1470e-9);
}
}  // namespace

TEST_CASE("Rabi frequency from pump intensity") {
  AtomicSystem sys = cs_default();
  double om = rabi_frequency(1e4, sys);  // 10 mW/mm^2
  CHECK(om == doctest::Approx(4.30e7).epsilon(0.01));
  CHECK(rabi_frequency(0.0, sys) == 0.0);
  CHECK(rabi_frequency(4e4, sys) == doctest::Approx(2.0 * om).epsilon(1e-12));
}

TEST_CASE("pump-broadened width") {
  AtomicSystem sys = cs_default();
  CHECK(pump_broadened_width(1e4, sys) / two_pi ==
        doctest::Approx(26.38e6).epsilon(0.01));
  CHECK(pump_broadened_width(0.0, sys) ==
        doctest::Approx(sys.gamma2_total()).epsilon(1e-12));
  CHECK(pump_broadened_width(saturation_intensity(sys), sys) ==
        doctest::Approx(std::sqrt(2.0) * sys.gamma2_total()).epsilon(1e-12));
}

TEST_CASE("Doppler chain at the reference pump") {
  AtomicSystem sys = cs_default();
  auto d = doppler_chain(pump_broadened_width(1e4, sys), sys);
  CHECK(d.delta_v == doctest::Approx(12.1).epsilon(0.01));
  CHECK(d.gamma / two_pi == doctest::Approx(10.04e6).epsilon(0.01));

  // no velocity class -> natural width only
  auto narrow = doppler_chain(1e-6, sys);
  CHECK(narrow.gamma == doctest::Approx(sys.gamma0_lase()).epsilon(1e-6));

  AtomicSystem longwave = sys;
  longwave.lambda_lase = 1.0;  // lambda34 -> inf limit
  auto nl = doppler_chain(pump_broadened_width(1e4, sys), longwave);
  CHECK(nl.gamma_doppler < 1e2);
}

TEST_CASE("atoms in the mode") {
  AtomicSystem sys = cs_default();
  CavityMode mode = shipped_mode();
  double n100 = atoms_in_mode(373.15, mode, sys);
  CHECK(n100 == doctest::Approx(1.81e11).epsilon(0.03));
  CavityMode empty = mode;
  empty.cell_length = 0.0;
  CHECK(atoms_in_mode(373.15, empty, sys) == 0.0);
  AtomicSystem denser = sys;
  denser.calibration_density *= 2.0;
  CHECK(atoms_in_mode(373.15, mode, denser) ==
        doctest::Approx(2.0 * n100).epsilon(1e-12));
}

TEST_CASE("effective atom number at the reference point") {
  AtomicSystem sys = cs_default();
  CavityMode mode = shipped_mode();
  auto d = doppler_chain(pump_broadened_width(1e4, sys), sys);
  double n = atoms_in_mode(373.15, mode, sys);
  double neff = effective_atom_number(n, d.delta_v, 373.15, sys);
  CHECK(neff == doctest::Approx(5.71e9).epsilon(0.02));
  // capture-all and capture-none limits
  CHECK(effective_atom_number(n, 1e9, 373.15, sys) ==
        doctest::Approx(n).epsilon(1e-9));
  CHECK(effective_atom_number(n, 1e-9, 373.15, sys) < 1e-6 * n);
}

TEST_CASE("erf and quadrature paths agree to 1e-9") {
  AtomicSystem sys = cs_default();
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dv_exp(-2.0, 3.0);  // 0.01..1000 m/s
  std::uniform_real_distribution<double> temp(274.0, 499.0);
  for (int i = 0; i < 100; ++i) {
    double dv = std::pow(10.0, dv_exp(rng));
    double t = temp(rng);
    double a = effective_atom_number(1.0, dv, t, sys);
    double b = effective_atom_number_quadrature(1.0, dv, t, sys);
    CHECK(b == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("coupling constant") {
  AtomicSystem sys = cs_default();
  CavityMode mode = shipped_mode();
  double g = coupling_constant(sys, mode);
  CHECK(g == doctest::Approx(1.99e5).epsilon(0.02));
  CavityMode big = mode;
  big.mode_volume *= 4.0;
  CHECK(coupling_constant(sys, big) == doctest::Approx(0.5 * g).epsilon(1e-12));
  AtomicSystem strong = sys;
  strong.dipole_moment *= 2.0;
  CHECK(coupling_constant(strong, mode) ==
        doctest::Approx(2.0 * g).epsilon(1e-12));
}

TEST_CASE("pump cycle time") {
  AtomicSystem sys = cs_default();
  double tc = pump_cycle_time(4.30e7, sys);
  CHECK(tc == doctest::Approx(280.3e-9).epsilon(0.002));
  CHECK(std::isinf(pump_cycle_time(0.0, sys)));
  AtomicSystem pinned = sys;
  pinned.tau_cyc_fixed = 1e-7;
  CHECK(pump_cycle_time(4.30e7, pinned) == 1e-7);
}

TEST_CASE("full chain reproduces the reference tuple in one pass") {
  AtomicSystem sys = cs_default();
  CavityMode mode = shipped_mode();
  PumpVaporConfig pump;  // 10 mW/mm^2, 100 C defaults
  GainParams gp = gain_chain(pump, sys, mode);
  CHECK(gp.omega_rabi == doctest::Approx(4.30e7).epsilon(0.01));
  CHECK(gp.gamma2 / two_pi == doctest::Approx(26.38e6).epsilon(0.01));
  CHECK(gp.delta_v == doctest::Approx(12.1).epsilon(0.01));
  CHECK(gp.gamma / two_pi == doctest::Approx(10.04e6).epsilon(0.01));
  CHECK(gp.atoms_in_mode == doctest::Approx(1.81e11).epsilon(0.03));
  CHECK(gp.effective_atoms == doctest::Approx(5.71e9).epsilon(0.02));
  CHECK(gp.coupling == doctest::Approx(1.99e5).epsilon(0.02));
}
