// capacitance.hpp — electrostatic capacitance of a closed surface via a
// piecewise-constant collocation discretization of the first-kind single-layer
// equation  ∫ σ(s) / (4π|t-s|) ds = 1  for t on the surface.
#pragma once

#include <vector>

#include "scat/mesh.hpp"

namespace scat {

struct SurfaceDensity {
  std::vector<double> sigma;  // constant per triangle, units 1/length
  double residual_inf = 0.0;  // ∞-norm of the collocation residual
};

struct CapacitanceValue {
  double cbar = 0.0;            // Σ σ·area, units of length
  double error_estimate = 0.0;  // 0 when no refinement information is available
};

// Solves the collocation system. quad_order 1 uses the centroid rule for
// separated triangle pairs; quad_order 3 upgrades them to a symmetrized 3-point
// edge-midpoint rule (dense solver path only, so triangle count <= 6000).
// Self terms and close pairs always use the analytic triangle potential.
// The system is assembled in charge unknowns q = σ·area, which makes the matrix
// exactly symmetric positive definite; small systems are factorized directly and
// large ones solved by Jacobi-preconditioned conjugate gradients on a packed
// upper-triangular store.
SurfaceDensity solve_density(const SurfaceMesh& mesh, int quad_order = 1);

CapacitanceValue capacitance(const SurfaceDensity& density, const SurfaceMesh& mesh);

// Analytic value for a sphere of radius r: the equilibrium density is 1/r, so the
// capacitance is 4πr.
CapacitanceValue capacitance_sphere(double r);

// One refinement study row. `estimate` is the extrapolated limit once three
// levels are available (observed-order Richardson), NaN before that.
struct RichardsonRow {
  int level = 0;
  int triangles = 0;
  double cbar = 0.0;
  double estimate = 0.0;
};

// Solves on `base`, then on `refinements` successive uniform refinements, and
// fills the running extrapolation column.
std::vector<RichardsonRow> capacitance_table(const SurfaceMesh& base, int refinements,
                                             int quad_order = 1);

// Finest-level capacitance with the error estimate taken from the refinement
// study (distance between the finest value and the extrapolated limit, falling
// back to the last level-to-level difference when only two levels exist).
CapacitanceValue capacitance_refined(const SurfaceMesh& base, int refinements,
                                     int quad_order = 1);

}  // namespace scat
