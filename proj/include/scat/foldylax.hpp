// foldylax.hpp — the point-interaction multiple-scattering system: assembly,
// invertibility diagnostics, direct/iterative solves, scattered and far fields.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scat/farfield.hpp"
#include "scat/geometry.hpp"

namespace scat {

// Outgoing Helmholtz fundamental solution e^{iκ|x-y|} / (4π|x-y|).
cplx helmholtz_kernel(double kappa, const Vec3& x, const Vec3& y);

// The M×M interaction system in the rescaled unknowns Y_m = Q_m / C_m:
// B·Y = U^I with diag(B) = −1 and B(m,j) = −C_j·Φ_κ(z_m, z_j) for m ≠ j,
// where C_j = C̄_j·a and U^I_m = e^{iκ z_m·θ}.
struct CouplingSystem {
  Eigen::MatrixXcd b;
  std::vector<Vec3> centers;
  std::vector<double> c;  // C_j = C̄_j·a
  double cbar_norm = 0.0;  // Euclidean norm of (C̄_1, ..., C̄_M)
  double kappa = 0.0;
  double a = 0.0;

  int size() const { return static_cast<int>(centers.size()); }
  // Incident vector U^I for one direction.
  Eigen::VectorXcd incident(const Vec3& theta) const;
};

CouplingSystem assemble(const ObstacleSet& set, double kappa);

// Computable hypotheses of the invertibility estimate: the size condition
// a < (5π/3)·d/‖Ĉ‖, the pairwise direction-cosine minimum, and the sufficient
// surrogate diam < π/(2κ). When both hypotheses hold, `bound` carries the
// guaranteed energy cap 4(1 − 3·mincos·a‖Ĉ‖/(5πd))⁻²·M for |U^i| = 1 data.
struct InvertibilityReport {
  double d = 0.0;
  double cbar_norm = 0.0;
  double size_limit = 0.0;   // (5π/3)·d/‖Ĉ‖
  bool size_ok = false;      // a < size_limit
  double min_cos = 1.0;
  bool min_cos_ok = false;   // min_cos >= 0
  bool diam_sufficient = false;  // diam(set) < π/(2κ) (implies min_cos_ok)
  double bound = 0.0;        // valid when hypotheses_ok()
  bool hypotheses_ok() const { return size_ok && min_cos_ok; }
};

InvertibilityReport check_invertibility(const ObstacleSet& set, double kappa);

struct ChargeVector {
  std::vector<cplx> q;  // Q_m
  std::vector<cplx> y;  // Y_m = Q_m / C_m
  double residual = 0.0;  // relative ℓ² residual of B·Y = U^I
  double sum_y_sq = 0.0;  // Σ|Y_m|²
};

struct SolveOptions {
  double tol = 1e-10;      // iterative relative residual target
  bool force = false;      // solve even when the invertibility hypotheses fail
  int direct_limit = 2000; // dense factorization up to this size
  int max_iters = 5000;
};

// Solves for every incident direction, reusing one factorization (direct path)
// or one symmetrized operator (iterative path, a conjugate-gradient variant for
// complex-symmetric matrices on D^{1/2}BD^{−1/2}). Refuses when hypotheses fail
// unless `force`; asserts the energy bound whenever the hypotheses hold.
std::vector<ChargeVector> solve(const CouplingSystem& system,
                                const std::vector<Vec3>& thetas,
                                const SolveOptions& opt = {});

// U∞(x̂,θ) = Σ_m e^{−iκ x̂·z_m} Q_m (paper convention; physical divides by 4π).
FarFieldTable far_field(const ObstacleSet& set, double kappa,
                        const std::vector<ChargeVector>& charges,
                        const std::vector<Vec3>& thetas, const std::vector<Vec3>& xhats,
                        Convention convention);

// Near field of the point-source representation: U^s(x) = Σ_m Φ_κ(x,z_m)·Q_m.
std::vector<cplx> scattered_field(const ObstacleSet& set, double kappa,
                                  const ChargeVector& charges,
                                  const std::vector<Vec3>& points);

}  // namespace scat
