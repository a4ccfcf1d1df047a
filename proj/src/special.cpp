// special.cpp — series/recurrence implementations of the special functions.
#include "scat/special.hpp"

#include <cmath>

namespace scat {

cplx sph_bessel_j(int n, cplx z) {
  // j_n(z) = z^n / (2n+1)!! * sum_m (-z^2/2)^m / (m! (2n+2m+1)!!)
  // Ascending series; for |z| up to ~10 and n up to ~60 the terms fall off fast.
  if (n < 0) throw ValidationError("sph_bessel_j: negative order");
  // Leading factor z^n/(2n+1)!!
  cplx lead = 1.0;
  double dfact = 1.0;
  for (int k = 1; k <= n; ++k) {
    lead *= z;
    dfact *= (2.0 * k + 1.0);
  }
  lead /= dfact;
  const cplx mz2h = -0.5 * z * z;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= mz2h / (static_cast<double>(m) * (2.0 * n + 2.0 * m + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return lead * sum;
}

double sph_bessel_y(int n, double x) {
  if (x <= 0.0) throw ValidationError("sph_bessel_y: needs x > 0");
  double ym1 = -std::cos(x) / x;                       // y_0
  if (n == 0) return ym1;
  double y0 = -std::cos(x) / (x * x) - std::sin(x) / x;  // y_1
  if (n == 1) return y0;
  for (int k = 2; k <= n; ++k) {
    const double y1 = (2.0 * k - 1.0) / x * y0 - ym1;
    ym1 = y0;
    y0 = y1;
  }
  return y0;
}

cplx sph_hankel1(int n, double x) {
  return cplx(std::real(sph_bessel_j(n, cplx(x, 0.0))), sph_bessel_y(n, x));
}

cplx sph_bessel_j_deriv(int n, cplx z) {
  if (n == 0) return -sph_bessel_j(1, z);
  return sph_bessel_j(n - 1, z) - (static_cast<double>(n) + 1.0) / z * sph_bessel_j(n, z);
}

cplx sph_hankel1_deriv(int n, double x) {
  if (n == 0) return -sph_hankel1(1, x);
  return sph_hankel1(n - 1, x) - (static_cast<double>(n) + 1.0) / x * sph_hankel1(n, x);
}

double legendre_p(int n, double x) {
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double pm1 = 1.0, p0 = x;
  for (int k = 2; k <= n; ++k) {
    const double p1 = ((2.0 * k - 1.0) * x * p0 - (k - 1.0) * pm1) / k;
    pm1 = p0;
    p0 = p1;
  }
  return p0;
}

}  // namespace scat
