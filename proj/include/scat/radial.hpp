// radial.hpp — separation-of-variables oracle for a constant potential on a
// ball: the transmission problem (Δ + κ² − q₀)U = 0 inside radius R₀,
// (Δ + κ²)U = 0 outside, with matched value and normal derivative.
#pragma once

#include <vector>

#include "scat/common.hpp"

namespace scat {

struct RadialSeries {
  double kappa = 0.0;
  double q0 = 0.0;
  double r0 = 0.0;
  std::vector<cplx> b;        // exterior scattered coefficients per order
  double matching_defect = 0.0;  // max boundary mismatch of the recombined modes
};

// Mode matching across the ball boundary; interior wavenumber sqrt(κ² − q₀)
// (imaginary for q₀ > κ², handled by the complex Bessel series).
RadialSeries radial_constant_ball(double kappa, double q0, double r0, int nmax = 24);

// Far field at scattering-angle cosine x̂·θ, physical convention:
// U∞ = (1/κ) Σ_n (−i)^{n+1} b_n P_n(x̂·θ).
cplx radial_far_field(const RadialSeries& series, double cos_angle);

}  // namespace scat
