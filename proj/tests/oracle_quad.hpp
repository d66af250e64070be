#ifndef ILSIM_TESTS_ORACLE_QUAD_HPP
#define ILSIM_TESTS_ORACLE_QUAD_HPP

// Test-only reference implementations, independent of src/. Brute-force
// quadrature in long double; slow but accurate to ~1e-16.

#include <cmath>
#include <functional>

namespace oracle {

// adaptive Simpson in long double
inline long double simpson(const std::function<long double(long double)>& f,
                           long double lo, long double hi, long double flo,
                           long double fmid, long double fhi, int depth,
                           long double eps) {
  long double mid = 0.5L * (lo + hi);
  long double fl = f(0.5L * (lo + mid));
  long double fr = f(0.5L * (mid + hi));
  long double whole = (hi - lo) / 6.0L * (flo + 4.0L * fmid + fhi);
  long double left = (mid - lo) / 6.0L * (flo + 4.0L * fl + fmid);
  long double right = (hi - mid) / 6.0L * (fmid + 4.0L * fr + fhi);
  if (depth <= 0 || std::fabs(left + right - whole) < eps * std::fabs(whole))
    return left + right + (left + right - whole) / 15.0L;
  return simpson(f, lo, mid, flo, fl, fmid, depth - 1, eps) +
         simpson(f, mid, hi, fmid, fr, fhi, depth - 1, eps);
}

// erfcx(z) = 2/sqrt(pi) * Int_0^inf exp(-2 z u - u^2) du
inline long double erfcx_ref(long double z) {
  const long double sqrt_pi = 1.77245385090551602729816748334L;
  std::function<long double(long double)> f = [z](long double u) {
    return std::exp(-2.0L * z * u - u * u);
  };
  // integrand support shrinks as 1/(2z) for large z
  long double cut = z > 1.0L ? 40.0L / z : 40.0L;
  long double val = simpson(f, 0.0L, cut, f(0.0L), f(0.5L * cut), f(cut), 22,
                            1e-15L);
  return 2.0L / sqrt_pi * val;
}

inline long double xi_ref(long double alpha, long double beta) {
  const long double sqrt_pi = 1.77245385090551602729816748334L;
  long double z = beta / alpha;
  return 2.0L / sqrt_pi * z / erfcx_ref(z) - 2.0L * z * z;
}

}  // namespace oracle

#endif
