#ifndef ILSIM_SPECIAL_HPP
#define ILSIM_SPECIAL_HPP

namespace ilsim {

// exp(z^2) erfc(z) for z >= 0, accurate to ~1e-14 relative over the full
// range. Direct product for small z; Lentz continued fraction beyond, where
// the naive 1 - erf(z) cancels and exp(z^2) overflows.
double erfcx(double z);

// Broadening interpolation coefficient of the linewidth model:
//   xi = (2/sqrt(pi)) z exp(-z^2)/erfc(z) - 2 z^2,   z = beta/alpha
// Ranges over (0,1); -> 0 in the Doppler-dominated limit, -> 1 in the
// power-broadening-dominated (homogeneous) limit.
double xi_coefficient(double alpha, double beta);

}  // namespace ilsim

#endif
