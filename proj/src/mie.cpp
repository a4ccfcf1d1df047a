// mie.cpp — sound-soft sphere partial-wave series.
#include "scat/mie.hpp"

#include <cmath>

#include "scat/special.hpp"

namespace scat {

cplx mie_soft_far_field(double kappa, double r, double cos_angle, int nmax) {
  if (!(kappa > 0.0 && r > 0.0)) throw ValidationError("mie: kappa and r must be positive");
  if (nmax < 0 || nmax > 200) throw ValidationError("mie: series order out of range");
  const double z = kappa * r;
  cplx sum = 0.0;
  const cplx i_unit(0.0, 1.0);
  cplx i_pow = 1.0;        // i^n
  cplx mi_pow = -i_unit;   // (−i)^{n+1}
  for (int n = 0; n <= nmax; ++n) {
    const cplx bn = -(2.0 * n + 1.0) * i_pow * sph_bessel_j(n, z) / sph_hankel1(n, z);
    sum += mi_pow * bn * legendre_p(n, cos_angle);
    i_pow *= i_unit;
    mi_pow *= -i_unit;
  }
  return sum / kappa;
}

double mie_soft_leading_amplitude(double kappa, double r) {
  if (!(kappa > 0.0 && r > 0.0)) throw ValidationError("mie: kappa and r must be positive");
  return -std::sin(kappa * r) / kappa;
}

}  // namespace scat
