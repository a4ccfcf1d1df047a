// foldylax.cpp — assembly and solution of the point-interaction system.
#include "scat/foldylax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scat/csv.hpp"

namespace scat {

cplx helmholtz_kernel(double kappa, const Vec3& x, const Vec3& y) {
  const double r = dist(x, y);
  if (!(r > 0.0)) throw ValidationError("helmholtz kernel: coincident points");
  return std::exp(cplx(0.0, kappa * r)) / (4.0 * kPi * r);
}

Eigen::VectorXcd CouplingSystem::incident(const Vec3& theta) const {
  Eigen::VectorXcd u(size());
  for (int m = 0; m < size(); ++m)
    u[m] = std::exp(cplx(0.0, kappa * dot(centers[m], theta)));
  return u;
}

CouplingSystem assemble(const ObstacleSet& set, double kappa) {
  if (set.size() < 1) throw ValidationError("assemble: empty obstacle set");
  if (!(kappa > 0.0)) throw ValidationError("assemble: wavenumber must be positive");
  const int m = set.size();

  CouplingSystem sys;
  sys.kappa = kappa;
  sys.a = set.a;
  sys.centers.resize(m);
  sys.c.resize(m);
  double norm_sq = 0.0;
  for (int i = 0; i < m; ++i) {
    sys.centers[i] = set.obstacles[i].center;
    sys.c[i] = set.obstacles[i].cbar * set.a;
    norm_sq += set.obstacles[i].cbar * set.obstacles[i].cbar;
  }
  sys.cbar_norm = std::sqrt(norm_sq);

  sys.b = Eigen::MatrixXcd(m, m);
  for (int row = 0; row < m; ++row) {
    for (int col = 0; col < m; ++col) {
      if (row == col) {
        sys.b(row, col) = cplx(-1.0, 0.0);
      } else {
        const double r = dist(sys.centers[row], sys.centers[col]);
        if (!(r > 0.0))
          throw ValidationError("assemble: coincident centers at indices " +
                                std::to_string(row) + "," + std::to_string(col));
        if (r < set.a)
          throw ValidationError("assemble: overlapping obstacles at indices " +
                                std::to_string(row) + "," + std::to_string(col));
        sys.b(row, col) = -sys.c[col] * helmholtz_kernel(kappa, sys.centers[row],
                                                         sys.centers[col]);
      }
    }
  }
  return sys;
}

InvertibilityReport check_invertibility(const ObstacleSet& set, double kappa) {
  const ValidationReport geo = validate_set(set, kappa);
  InvertibilityReport rep;
  rep.d = geo.d;
  double norm_sq = 0.0;
  for (const Obstacle& ob : set.obstacles) norm_sq += ob.cbar * ob.cbar;
  rep.cbar_norm = std::sqrt(norm_sq);
  rep.min_cos = geo.min_cos;
  rep.min_cos_ok = geo.min_cos_ok;
  rep.diam_sufficient = geo.diam_ok;

  if (set.size() == 1) {
    rep.size_limit = std::numeric_limits<double>::infinity();
    rep.size_ok = true;
    rep.bound = 4.0;  // the estimate with no interaction term
    return rep;
  }
  rep.size_limit = (5.0 * kPi / 3.0) * rep.d / rep.cbar_norm;
  rep.size_ok = set.a < rep.size_limit;
  if (rep.hypotheses_ok()) {
    const double denom =
        1.0 - 3.0 * rep.min_cos * set.a * rep.cbar_norm / (5.0 * kPi * rep.d);
    rep.bound = 4.0 / (denom * denom) * set.size();
  }
  return rep;
}

namespace {

// Conjugate-gradient iteration for complex-symmetric systems: identical to CG
// but with unconjugated inner products, preserving A = Aᵀ structure.
Eigen::VectorXcd solve_cocg(const Eigen::MatrixXcd& s, const Eigen::VectorXcd& rhs,
                            double tol, int max_iters, double* out_residual) {
  const double rhs_norm = rhs.norm();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(rhs.size());
  Eigen::VectorXcd r = rhs, p = rhs;
  cplx rho = r.transpose() * r;
  for (int it = 0; it < max_iters; ++it) {
    if (r.norm() <= tol * rhs_norm) break;
    const Eigen::VectorXcd sp = s * p;
    const cplx denom = p.transpose() * sp;
    if (std::abs(denom) < 1e-300 || std::abs(rho) < 1e-300)
      throw NumericalError("iterative solve: breakdown (vanishing inner product)");
    const cplx alpha = rho / denom;
    x += alpha * p;
    r -= alpha * sp;
    const cplx rho_new = r.transpose() * r;
    p = r + (rho_new / rho) * p;
    rho = rho_new;
  }
  const double res = (rhs - s * x).norm() / rhs_norm;
  if (res > tol * 10.0)
    throw NumericalError("iterative solve: stalled at relative residual " + fmt17(res) +
                         " (target " + fmt17(tol) + ")");
  if (out_residual) *out_residual = res;
  return x;
}

}  // namespace

std::vector<ChargeVector> solve(const CouplingSystem& system,
                                const std::vector<Vec3>& thetas,
                                const SolveOptions& opt) {
  if (thetas.empty()) throw ValidationError("solve: no incident directions");
  const int m = system.size();

  // Re-derive the hypotheses from the assembled data (set-level geometry is
  // not available here; d comes from the center distances and the global a).
  ObstacleSet shadow;
  shadow.a = system.a;
  shadow.t = 1.0 / 3.0;
  shadow.obstacles.resize(m);
  for (int i = 0; i < m; ++i) {
    shadow.obstacles[i].center = system.centers[i];
    shadow.obstacles[i].a = system.a;
    shadow.obstacles[i].cbar = system.c[i] / system.a;
    shadow.obstacles[i].t_flat = 1.0;
  }
  const InvertibilityReport inv = check_invertibility(shadow, system.kappa);
  if (!inv.hypotheses_ok() && !opt.force)
    throw ValidationError(
        "solve: invertibility hypotheses fail (size_ok=" + std::to_string(inv.size_ok) +
        " min_cos=" + fmt17(inv.min_cos) + "); pass force to override");

  // Multiple right-hand sides as columns.
  Eigen::MatrixXcd rhs(m, static_cast<int>(thetas.size()));
  for (size_t t = 0; t < thetas.size(); ++t) rhs.col(t) = system.incident(thetas[t]);

  Eigen::MatrixXcd y_all(m, static_cast<int>(thetas.size()));
  if (m <= opt.direct_limit) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.b);
    y_all = lu.solve(rhs);
  } else {
    // Symmetrize: S = D^{1/2} B D^{−1/2} with D = diag(C_j) > 0; S is
    // complex-symmetric, so the unconjugated CG variant applies.
    Eigen::VectorXd dsqrt(m);
    for (int i = 0; i < m; ++i) dsqrt[i] = std::sqrt(system.c[i]);
    Eigen::MatrixXcd s = system.b;
    for (int r = 0; r < m; ++r)
      for (int col = 0; col < m; ++col) s(r, col) *= dsqrt[r] / dsqrt[col];
    for (size_t t = 0; t < thetas.size(); ++t) {
      const Eigen::VectorXcd b_scaled = dsqrt.cast<cplx>().asDiagonal() * rhs.col(t);
      const Eigen::VectorXcd u =
          solve_cocg(s, b_scaled, opt.tol, opt.max_iters, nullptr);
      y_all.col(t) = dsqrt.cwiseInverse().cast<cplx>().asDiagonal() * u;
    }
  }

  std::vector<ChargeVector> out(thetas.size());
  for (size_t t = 0; t < thetas.size(); ++t) {
    ChargeVector& cv = out[t];
    cv.y.resize(m);
    cv.q.resize(m);
    double sum_sq = 0.0;
    for (int i = 0; i < m; ++i) {
      cv.y[i] = y_all(i, static_cast<int>(t));
      cv.q[i] = cv.y[i] * system.c[i];
      sum_sq += std::norm(cv.y[i]);
    }
    cv.sum_y_sq = sum_sq;
    cv.residual =
        (system.b * y_all.col(static_cast<int>(t)) - rhs.col(static_cast<int>(t))).norm() /
        rhs.col(static_cast<int>(t)).norm();
    if (inv.hypotheses_ok() && sum_sq > inv.bound * (1.0 + 1e-9))
      throw NumericalError("solve: energy bound violated: sum|Y|^2 = " + fmt17(sum_sq) +
                           " exceeds " + fmt17(inv.bound));
  }
  return out;
}

FarFieldTable far_field(const ObstacleSet& set, double kappa,
                        const std::vector<ChargeVector>& charges,
                        const std::vector<Vec3>& thetas, const std::vector<Vec3>& xhats,
                        Convention convention) {
  if (charges.size() != thetas.size())
    throw ValidationError("far_field: one charge vector per incident direction required");
  if (xhats.empty()) throw ValidationError("far_field: empty observation grid");
  const int m = set.size();
  const int nx = static_cast<int>(xhats.size());
  const int nt = static_cast<int>(thetas.size());

  Eigen::MatrixXcd phase(nx, m);
  for (int x = 0; x < nx; ++x)
    for (int i = 0; i < m; ++i)
      phase(x, i) = std::exp(cplx(0.0, -kappa * dot(xhats[x], set.obstacles[i].center)));

  Eigen::MatrixXcd q(m, nt);
  double q_max = 0.0;
  for (int t = 0; t < nt; ++t) {
    if (static_cast<int>(charges[t].q.size()) != m)
      throw ValidationError("far_field: charge vector size mismatch");
    for (int i = 0; i < m; ++i) {
      q(i, t) = charges[t].q[i];
      q_max = std::max(q_max, std::abs(charges[t].q[i]));
    }
  }

  FarFieldTable table;
  table.xhats = xhats;
  table.thetas = thetas;
  table.convention = convention;
  table.values = phase * q;
  if (convention == Convention::kPhysical) table.values /= 4.0 * kPi;
  table.check_unit_directions();

  // Triangle-inequality sanity bound |U∞| ≤ M·max|Q| (paper convention scale).
  const double cap = m * q_max * (convention == Convention::kPhysical ? 1.0 / (4.0 * kPi) : 1.0);
  if (table.values.cwiseAbs().maxCoeff() > cap * (1.0 + 1e-12))
    throw NumericalError("far_field: value exceeds the charge-sum bound (internal error)");
  return table;
}

std::vector<cplx> scattered_field(const ObstacleSet& set, double kappa,
                                  const ChargeVector& charges,
                                  const std::vector<Vec3>& points) {
  if (static_cast<int>(charges.q.size()) != set.size())
    throw ValidationError("scattered_field: charge vector size mismatch");
  std::vector<cplx> out(points.size());
  for (size_t p = 0; p < points.size(); ++p) {
    cplx sum = 0.0;
    for (int i = 0; i < set.size(); ++i)
      sum += helmholtz_kernel(kappa, points[p], set.obstacles[i].center) * charges.q[i];
    out[p] = sum;
  }
  return out;
}

}  // namespace scat
