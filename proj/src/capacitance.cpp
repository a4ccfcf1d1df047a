// capacitance.cpp — single-layer collocation assembly and solvers.
//
// Discretization notes. With charge unknowns q_j = σ_j·A_j the collocation row at
// centroid c_i reads Σ_j G_ij q_j = 1 with G_ij = (1/A_j)∫_{T_j} ds/(4π|c_i-s|).
// The centroid rule for separated pairs gives G_ij = 1/(4π|c_i-c_j|), which is
// exactly symmetric; close pairs and self terms are replaced by the analytic
// triangle potential, symmetrized as the average of the two directions so the
// matrix stays symmetric (and in practice positive definite, the discrete analogue
// of the single-layer operator's coercivity).
#include "scat/capacitance.hpp"

#include <cblas.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "scat/csv.hpp"
#include "scat/kernels.hpp"

extern "C" void openblas_set_num_threads(int);

namespace scat {

namespace {

constexpr int kDirectLimit = 6000;      // dense factorization up to this many triangles
constexpr double kNearFactor = 2.5;     // pair is "close" if dist < factor·(R_i+R_j)
constexpr double kQuarterInvPi = 1.0 / (4.0 * kPi);

// Per-triangle circumscribing radius about the centroid.
std::vector<double> centroid_radii(const SurfaceMesh& mesh) {
  std::vector<double> radius(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    double r = 0.0;
    for (int k = 0; k < 3; ++k)
      r = std::max(r, dist(mesh.vertices[mesh.triangles[t][k]], mesh.centroid[t]));
    radius[t] = r;
  }
  return radius;
}

// Mean of ∫_{T_j} ds/|c_i-s| / A_j over both orientations of the pair (i, j).
double analytic_pair(const SurfaceMesh& mesh, int i, int j) {
  const auto& ti = mesh.triangles[i];
  const auto& tj = mesh.triangles[j];
  const double pij = tri_potential(mesh.centroid[i], mesh.vertices[tj[0]],
                                   mesh.vertices[tj[1]], mesh.vertices[tj[2]]) /
                     mesh.area[j];
  const double pji = tri_potential(mesh.centroid[j], mesh.vertices[ti[0]],
                                   mesh.vertices[ti[1]], mesh.vertices[ti[2]]) /
                     mesh.area[i];
  return 0.5 * (pij + pji) * kQuarterInvPi;
}

double analytic_self(const SurfaceMesh& mesh, int i) {
  const auto& ti = mesh.triangles[i];
  return tri_potential(mesh.centroid[i], mesh.vertices[ti[0]], mesh.vertices[ti[1]],
                       mesh.vertices[ti[2]]) /
         mesh.area[i] * kQuarterInvPi;
}

// Mean of the 3-point edge-midpoint rule over both orientations (quad_order 3).
double midpoint_pair(const SurfaceMesh& mesh, int i, int j) {
  auto one_way = [&](int tgt, int src) {
    const auto& tri = mesh.triangles[src];
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const Vec3 m0 = (a + b) * 0.5, m1 = (b + c) * 0.5, m2 = (c + a) * 0.5;
    const Vec3& p = mesh.centroid[tgt];
    return (1.0 / 3.0) * (1.0 / dist(p, m0) + 1.0 / dist(p, m1) + 1.0 / dist(p, m2));
  };
  return 0.5 * (one_way(i, j) + one_way(j, i)) * kQuarterInvPi;
}

struct Coords {
  std::vector<double> x, y, z;
};

Coords centroid_coords(const SurfaceMesh& mesh) {
  Coords c;
  const int n = mesh.num_triangles();
  c.x.resize(n);
  c.y.resize(n);
  c.z.resize(n);
  for (int t = 0; t < n; ++t) {
    c.x[t] = mesh.centroid[t].x;
    c.y[t] = mesh.centroid[t].y;
    c.z[t] = mesh.centroid[t].z;
  }
  return c;
}

// Dense assembly (column-symmetric by construction).
Eigen::MatrixXd assemble_dense(const SurfaceMesh& mesh, const std::vector<double>& radius,
                               int quad_order) {
  const int n = mesh.num_triangles();
  Eigen::MatrixXd g(n, n);
  const Coords c = centroid_coords(mesh);
  std::vector<double> recip(n);
  for (int j = 0; j < n; ++j) {
    kern::recip_dist_row(c.x.data(), c.y.data(), c.z.data(), j, c.x[j], c.y[j], c.z[j],
                         recip.data());
    for (int i = 0; i < j; ++i) {
      double v;
      if (recip[i] * kNearFactor * (radius[i] + radius[j]) > 1.0)
        v = analytic_pair(mesh, i, j);
      else if (quad_order >= 3)
        v = midpoint_pair(mesh, i, j);
      else
        v = recip[i] * kQuarterInvPi;
      g(i, j) = v;
      g(j, i) = v;
    }
    g(j, j) = analytic_self(mesh, j);
  }
  return g;
}

// Packed upper-triangle assembly (column-major: entry (i,j), i<=j, at i + j(j+1)/2).
std::vector<double> assemble_packed(const SurfaceMesh& mesh,
                                    const std::vector<double>& radius) {
  const int n = mesh.num_triangles();
  std::vector<double> ap(static_cast<size_t>(n) * (n + 1) / 2);
  const Coords c = centroid_coords(mesh);
  for (int j = 0; j < n; ++j) {
    double* col = ap.data() + static_cast<size_t>(j) * (j + 1) / 2;
    kern::recip_dist_row(c.x.data(), c.y.data(), c.z.data(), j, c.x[j], c.y[j], c.z[j],
                         col);
    for (int i = 0; i < j; ++i) {
      if (col[i] * kNearFactor * (radius[i] + radius[j]) > 1.0)
        col[i] = analytic_pair(mesh, i, j);
      else
        col[i] *= kQuarterInvPi;
    }
    col[j] = analytic_self(mesh, j);
  }
  return ap;
}

// Jacobi-preconditioned conjugate gradients on the packed matrix.
std::vector<double> solve_packed_cg(const std::vector<double>& ap, int n, double tol,
                                    int max_iters) {
  openblas_set_num_threads(1);
  std::vector<double> q(n, 0.0), r(n, 1.0), zv(n), p(n), aq(n), diag(n);
  for (int i = 0; i < n; ++i)
    diag[i] = ap[static_cast<size_t>(i) * (i + 1) / 2 + i];

  auto dot_v = [&](const std::vector<double>& u, const std::vector<double>& v) {
    return cblas_ddot(n, u.data(), 1, v.data(), 1);
  };

  const double rhs_norm = std::sqrt(static_cast<double>(n));
  double rz = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    for (int i = 0; i < n; ++i) zv[i] = r[i] / diag[i];
    const double rz_new = dot_v(r, zv);
    if (it == 0) {
      p = zv;
    } else {
      const double beta = rz_new / rz;
      for (int i = 0; i < n; ++i) p[i] = zv[i] + beta * p[i];
    }
    rz = rz_new;
    cblas_dspmv(CblasColMajor, CblasUpper, n, 1.0, ap.data(), p.data(), 1, 0.0, aq.data(),
                1);
    const double alpha = rz / dot_v(p, aq);
    cblas_daxpy(n, alpha, p.data(), 1, q.data(), 1);
    cblas_daxpy(n, -alpha, aq.data(), 1, r.data(), 1);
    if (std::sqrt(dot_v(r, r)) <= tol * rhs_norm) return q;
  }
  throw NumericalError("capacitance: conjugate gradients did not reach tolerance " +
                       fmt17(tol) + " in " + std::to_string(max_iters) +
                       " iterations (system likely ill-conditioned)");
}

}  // namespace

SurfaceDensity solve_density(const SurfaceMesh& mesh, int quad_order) {
  if (quad_order != 1 && quad_order != 3)
    throw ValidationError("solve_density: quadrature order must be 1 or 3");
  mesh.validate();
  const int n = mesh.num_triangles();
  if (quad_order == 3 && n > kDirectLimit)
    throw ValidationError(
        "solve_density: quadrature order 3 is limited to meshes with <= " +
        std::to_string(kDirectLimit) + " triangles");

  const std::vector<double> radius = centroid_radii(mesh);
  std::vector<double> q(n);
  double residual_inf = 0.0;

  if (n <= kDirectLimit) {
    const Eigen::MatrixXd g = assemble_dense(mesh, radius, quad_order);
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) {
      // Cheap conditioning signal for the error message: diagonal spread.
      const double dmax = g.diagonal().maxCoeff();
      const double dmin = g.diagonal().minCoeff();
      throw NumericalError(
          "solve_density: collocation matrix is not positive definite "
          "(diagonal spread " +
          fmt17(dmax / std::max(dmin, std::numeric_limits<double>::min())) + ")");
    }
    const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd sol = llt.solve(rhs);
    const Eigen::VectorXd res = g * sol - rhs;
    residual_inf = res.lpNorm<Eigen::Infinity>();
    for (int i = 0; i < n; ++i) q[i] = sol[i];
  } else {
    const std::vector<double> ap = assemble_packed(mesh, radius);
    q = solve_packed_cg(ap, n, 1e-10, 2000);
    std::vector<double> gq(n);
    cblas_dspmv(CblasColMajor, CblasUpper, n, 1.0, ap.data(), q.data(), 1, 0.0, gq.data(),
                1);
    for (int i = 0; i < n; ++i) residual_inf = std::max(residual_inf, std::fabs(gq[i] - 1.0));
  }

  SurfaceDensity density;
  density.sigma.resize(n);
  for (int i = 0; i < n; ++i) density.sigma[i] = q[i] / mesh.area[i];
  density.residual_inf = residual_inf;
  return density;
}

CapacitanceValue capacitance(const SurfaceDensity& density, const SurfaceMesh& mesh) {
  if (static_cast<int>(density.sigma.size()) != mesh.num_triangles())
    throw ValidationError("capacitance: density and mesh triangle counts differ");
  double cbar = 0.0;
  for (int i = 0; i < mesh.num_triangles(); ++i) cbar += density.sigma[i] * mesh.area[i];
  if (!(cbar > 0.0))
    throw NumericalError("capacitance: non-positive value " + fmt17(cbar));
  return {cbar, 0.0};
}

CapacitanceValue capacitance_sphere(double r) {
  if (!(r > 0.0)) throw ValidationError("capacitance_sphere: radius must be positive");
  return {4.0 * kPi * r, 0.0};
}

std::vector<RichardsonRow> capacitance_table(const SurfaceMesh& base, int refinements,
                                             int quad_order) {
  if (refinements < 0 || refinements > 6)
    throw ValidationError("capacitance_table: refinements must be in [0,6]");
  std::vector<RichardsonRow> rows;
  SurfaceMesh mesh = base;
  mesh.finalize();
  for (int level = 0; level <= refinements; ++level) {
    if (level > 0) mesh = mesh.refined();
    const SurfaceDensity density = solve_density(mesh, quad_order);
    RichardsonRow row;
    row.level = level;
    row.triangles = mesh.num_triangles();
    row.cbar = capacitance(density, mesh).cbar;
    row.estimate = std::numeric_limits<double>::quiet_NaN();
    if (rows.size() >= 2) {
      const double c0 = rows[rows.size() - 2].cbar;
      const double c1 = rows[rows.size() - 1].cbar;
      const double c2 = row.cbar;
      const double num = c0 - c1;
      const double den = c1 - c2;
      if (den != 0.0 && num / den > 1.0) {
        const double rate = num / den;  // observed 2^p between successive halvings
        row.estimate = c2 + (c2 - c1) / (rate - 1.0);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

CapacitanceValue capacitance_refined(const SurfaceMesh& base, int refinements,
                                     int quad_order) {
  const std::vector<RichardsonRow> rows = capacitance_table(base, refinements, quad_order);
  const RichardsonRow& last = rows.back();
  CapacitanceValue value{last.cbar, 0.0};
  if (std::isfinite(last.estimate))
    value.error_estimate = std::fabs(last.estimate - last.cbar);
  else if (rows.size() >= 2)
    value.error_estimate = std::fabs(last.cbar - rows[rows.size() - 2].cbar);
  return value;
}

}  // namespace scat
