// radial.cpp — mode matching for the constant-ball transmission problem.
#include "scat/radial.hpp"

#include <cmath>

#include "scat/special.hpp"

namespace scat {

RadialSeries radial_constant_ball(double kappa, double q0, double r0, int nmax) {
  if (!(kappa > 0.0 && r0 > 0.0))
    throw ValidationError("radial oracle: kappa and radius must be positive");
  if (nmax < 0 || nmax > 120) throw ValidationError("radial oracle: order out of range");

  const cplx kin = std::sqrt(cplx(kappa * kappa - q0, 0.0));
  if (std::abs(kin) * r0 < 1e-9)
    throw ValidationError("radial oracle: interior wavenumber too close to zero");

  RadialSeries series;
  series.kappa = kappa;
  series.q0 = q0;
  series.r0 = r0;
  series.b.resize(nmax + 1);

  const double z = kappa * r0;
  const cplx zin = kin * r0;
  cplx i_pow = 1.0;  // i^n
  double defect = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const cplx c_inc = (2.0 * n + 1.0) * i_pow;
    const cplx j = sph_bessel_j(n, cplx(z, 0.0));
    const cplx jp = sph_bessel_j_deriv(n, cplx(z, 0.0));
    const cplx h = sph_hankel1(n, z);
    const cplx hp = sph_hankel1_deriv(n, z);
    const cplx jin = sph_bessel_j(n, zin);
    const cplx jinp = sph_bessel_j_deriv(n, zin);

    const cplx num = kappa * jp * jin - kin * j * jinp;
    const cplx den = kappa * hp * jin - kin * h * jinp;
    const cplx b = -c_inc * num / den;
    series.b[n] = b;

    // Recover the interior coefficient from the value match and measure how well
    // the derivative match is satisfied (relative to the mode amplitude scale).
    if (std::abs(jin) > 1e-280) {
      const cplx alpha = (c_inc * j + b * h) / jin;
      const cplx lhs = alpha * kin * jinp;
      const cplx rhs = c_inc * kappa * jp + b * kappa * hp;
      const double scale = std::abs(c_inc) * kappa * std::max(std::abs(jp), 1e-30);
      defect = std::max(defect, std::abs(lhs - rhs) / scale);
    }
    i_pow *= cplx(0.0, 1.0);
  }
  series.matching_defect = defect;
  return series;
}

cplx radial_far_field(const RadialSeries& series, double cos_angle) {
  cplx sum = 0.0;
  cplx mi_pow = cplx(0.0, -1.0);  // (−i)^{n+1}
  for (size_t n = 0; n < series.b.size(); ++n) {
    sum += mi_pow * series.b[n] * legendre_p(static_cast<int>(n), cos_angle);
    mi_pow *= cplx(0.0, -1.0);
  }
  return sum / series.kappa;
}

}  // namespace scat
