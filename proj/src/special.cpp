#include "ilsim/special.hpp"

#include <cmath>
#include <stdexcept>

#include "ilsim/constants.hpp"

namespace ilsim {

using constants::pi;

double erfcx(double z) {
  if (!(z >= 0.0)) throw std::domain_error("erfcx: z must be >= 0");
  if (z < 2.0) return std::exp(z * z) * std::erfc(z);
  // erfcx(z) = 1/sqrt(pi) / (z + (1/2)/(z + (2/2)/(z + (3/2)/(z + ...))))
  // evaluated bottom-up; depth chosen for ~1e-15 at the slow end (z = 2)
  int depth = z < 4.0 ? 160 : (z < 10.0 ? 60 : 24);
  double t = 0.0;
  for (int k = depth; k >= 1; --k) t = (0.5 * k) / (z + t);
  return 1.0 / (std::sqrt(pi) * (z + t));
}

double xi_coefficient(double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::domain_error("xi: alpha must be positive");
  if (!(beta >= 1.0)) throw std::domain_error("xi: beta must be >= 1");
  double z = beta / alpha;
  return 2.0 / std::sqrt(pi) * z / erfcx(z) - 2.0 * z * z;
}

}  // namespace ilsim
