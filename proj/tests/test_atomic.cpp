#include "doctest.h"

#include <cmath>

#include "ilsim/atomic.hpp"
#include "ilsim/constants.hpp"

using namespace ilsim;
using namespace ilsim::constants;

TEST_CASE("decay-rate map is closed and positive") {
  AtomicSystem sys = cs_default();
  CHECK_NOTHROW(sys.validate());
  // every rate the dynamics references must exist; no silent defaults
  AtomicSystem broken = sys;
  broken.decay_rates.erase({5, 6});
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
  // total decay out of |2| matches the published sum
  CHECK(sys.gamma2_total() == doctest::Approx(5.903e6).epsilon(1e-12));
}

TEST_CASE("vapor density: calibration point and pinned sample") {
  AtomicSystem sys = cs_default();
  // 1.57e13 cm^-3 at 100 C by calibration
  CHECK(vapor_number_density(sys, 373.15) ==
        doctest::Approx(1.57e19).epsilon(1e-12));
  // value of the shipped curve at 72.5 C, frozen from a reference evaluation
  CHECK(vapor_number_density(sys, 345.65) ==
        doctest::Approx(2.585489e18).epsilon(1e-3));
  CHECK_THROWS_AS(vapor_number_density(sys, 250.0), std::domain_error);
  CHECK_THROWS_AS(vapor_number_density(sys, 600.0), std::domain_error);
}

TEST_CASE("vapor density is strictly increasing and continuous") {
  AtomicSystem sys = cs_default();
  double prev = vapor_number_density(sys, 274.0);
  for (int t = 275; t < 500; ++t) {
    double cur = vapor_number_density(sys, t);
    CHECK(cur > prev);
    // no jumps: successive 1 K values stay within a bounded ratio
    CHECK(cur / prev < 1.25);
    prev = cur;
  }
}

TEST_CASE("saturation intensity") {
  AtomicSystem sys = cs_default();
  double is = saturation_intensity(sys);
  // 1.27 mW/cm^2 = 12.7 W/m^2
  CHECK(is == doctest::Approx(12.7).epsilon(0.01));

  AtomicSystem scaled = sys;
  for (auto key : {std::pair{2, 1}, std::pair{2, 3}, std::pair{2, 5}})
    scaled.decay_rates[key] *= 2.0;
  CHECK(saturation_intensity(scaled) == doctest::Approx(2.0 * is).epsilon(1e-12));

  AtomicSystem longer = sys;
  longer.lambda_pump *= 2.0;
  CHECK(saturation_intensity(longer) == doctest::Approx(is / 8.0).epsilon(1e-12));
}
