// special.hpp — spherical Bessel/Hankel functions and Legendre polynomials.
//
// Needed by the sound-soft Mie series and the radial transmission oracle. j_n accepts
// complex argument (the interior wavenumber sqrt(kappa^2 - q0) may be imaginary);
// y_n/h_n are only required for real argument (exterior radiation).
#pragma once

#include <vector>

#include "scat/common.hpp"

namespace scat {

// j_n(z) for complex z via the ascending power series (accurate for the |z| <~ 10 range
// used here; terms decay factorially).
cplx sph_bessel_j(int n, cplx z);

// y_n(x), real x > 0, by upward recurrence (stable for y).
double sph_bessel_y(int n, double x);

// h_n^(1)(x) = j_n(x) + i y_n(x), real x > 0.
cplx sph_hankel1(int n, double x);

// Derivatives via f_n'(z) = f_{n-1}(z) - (n+1)/z f_n(z) (f0' = -f1).
cplx sph_bessel_j_deriv(int n, cplx z);
cplx sph_hankel1_deriv(int n, double x);

// Legendre polynomial P_n(x) by the three-term recurrence.
double legendre_p(int n, double x);

}  // namespace scat
