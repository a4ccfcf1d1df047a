// mesh.hpp — closed triangle surface meshes: generation, IO, validation, refinement.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "scat/common.hpp"

namespace scat {

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  // Derived per-triangle data, filled by finalize().
  std::vector<double> area;
  std::vector<Vec3> centroid;

  int num_triangles() const { return static_cast<int>(triangles.size()); }

  void finalize();  // computes areas/centroids

  // Checks closedness: every edge shared by exactly two triangles with opposite
  // orientation, and no triangle with area below eps * bbox_scale^2.
  // Throws ValidationError describing the first failure.
  void validate(double degenerate_eps = 1e-12) const;

  // Bounding-box diagonal scale.
  double bbox_scale() const;

  // Uniform midpoint subdivision (1 -> 4 triangles). If every vertex lies on a common
  // sphere (relative radius spread < 1e-9), midpoints are projected back onto it so
  // refinement converges to the smooth body instead of the polyhedron.
  SurfaceMesh refined() const;

  // Returns a copy scaled by s about the origin.
  SurfaceMesh scaled(double s) const;
};

// Icosphere of the given radius: 20 * 4^level triangles, vertices on the sphere.
SurfaceMesh make_icosphere(int level, double radius = 1.0);

// Axis-aligned cube of the given side centered at the origin; 12 * n^2 triangles.
SurfaceMesh make_cube(int n, double side = 1.0);

// ASCII mesh format: first line "<nv> <nt>", then nv lines "x y z", then nt lines of
// 0-based vertex index triples.
SurfaceMesh read_mesh(const std::string& path);
void write_mesh(const SurfaceMesh& mesh, const std::string& path);

// Analytic integral of 1/|p - s| over the (planar) triangle with the given vertices.
// Valid for any p not on the triangle's edges; p inside/over/under the triangle is fine.
double tri_potential(const Vec3& p, const Vec3& v0, const Vec3& v1, const Vec3& v2);

// Quadrature fallback/oracle: recursive quadrisection with centroid rule on leaves.
// Subdivides while triangle diameter > ratio * distance(p, centroid), up to max_depth.
double tri_potential_quad(const Vec3& p, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                          int max_depth = 12, double ratio = 0.12);

}  // namespace scat
