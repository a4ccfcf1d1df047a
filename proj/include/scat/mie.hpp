// mie.hpp — series oracle for plane-wave scattering by a sound-soft sphere.
#pragma once

#include "scat/common.hpp"

namespace scat {

// Far field (physical convention, U^s ~ e^{iκ|x|}/|x|·U∞) of the plane wave
// e^{iκ x·θ} scattered by the sound-soft (Dirichlet) sphere of radius r centered
// at the origin, evaluated at scattering angle cosine x̂·θ:
//   U∞ = (1/κ) Σ_n (2n+1)(−i)^{n+1} i^n ·(−j_n(κr)/h_n(κr))· P_n(x̂·θ).
cplx mie_soft_far_field(double kappa, double r, double cos_angle, int nmax = 20);

// Small-κr leading amplitude of the above: −sin(κr)/κ (the n = 0 magnitude with
// the residual phase stripped; relative error O((κr)²)).
double mie_soft_leading_amplitude(double kappa, double r);

}  // namespace scat
