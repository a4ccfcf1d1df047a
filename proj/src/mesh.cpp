// mesh.cpp — triangle mesh generation, IO, validation, and the analytic
// constant-density triangle potential used by the capacitance solver.
#include "scat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "scat/csv.hpp"  // fmt17

namespace scat {

void SurfaceMesh::finalize() {
  const int nt = num_triangles();
  area.assign(nt, 0.0);
  centroid.assign(nt, Vec3{});
  for (int t = 0; t < nt; ++t) {
    const Vec3& a = vertices[triangles[t][0]];
    const Vec3& b = vertices[triangles[t][1]];
    const Vec3& c = vertices[triangles[t][2]];
    area[t] = 0.5 * cross(b - a, c - a).norm();
    centroid[t] = (a + b + c) * (1.0 / 3.0);
  }
}

double SurfaceMesh::bbox_scale() const {
  if (vertices.empty()) return 0.0;
  Vec3 lo = vertices[0], hi = vertices[0];
  for (const Vec3& v : vertices) {
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  }
  return (hi - lo).norm();
}

void SurfaceMesh::validate(double degenerate_eps) const {
  const int nv = static_cast<int>(vertices.size());
  const int nt = num_triangles();
  if (nv < 4 || nt < 4) throw ValidationError("mesh: too few vertices or triangles");
  if (static_cast<int>(area.size()) != nt)
    throw ValidationError("mesh: finalize() not called before validate()");

  const double scale = bbox_scale();
  if (!(scale > 0.0)) throw ValidationError("mesh: degenerate bounding box");

  // Directed-edge multiset: a closed orientable surface has every directed edge
  // exactly once and its reverse exactly once.
  std::map<std::pair<int, int>, int> edge_count;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv)
        throw ValidationError("mesh: triangle " + std::to_string(t) +
                              " has out-of-range vertex index");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw ValidationError("mesh: triangle " + std::to_string(t) +
                            " repeats a vertex");
    if (!(area[t] > degenerate_eps * scale * scale))
      throw ValidationError("mesh: triangle " + std::to_string(t) +
                            " is degenerate (area " + fmt17(area[t]) + ")");
    for (int k = 0; k < 3; ++k) {
      ++edge_count[{tri[k], tri[(k + 1) % 3]}];
    }
  }
  for (const auto& [edge, count] : edge_count) {
    if (count != 1)
      throw ValidationError("mesh: directed edge (" + std::to_string(edge.first) + "," +
                            std::to_string(edge.second) + ") used " +
                            std::to_string(count) + " times");
    auto rev = edge_count.find({edge.second, edge.first});
    if (rev == edge_count.end())
      throw ValidationError("mesh: boundary edge (" + std::to_string(edge.first) + "," +
                            std::to_string(edge.second) + ") — surface is not closed");
  }
}

SurfaceMesh SurfaceMesh::scaled(double s) const {
  SurfaceMesh out = *this;
  for (Vec3& v : out.vertices) v = v * s;
  out.finalize();
  return out;
}

SurfaceMesh SurfaceMesh::refined() const {
  // Detect a sphere about the origin: all vertex radii equal to 1e-9 relative.
  double rmin = 1e300, rmax = 0.0, rsum = 0.0;
  for (const Vec3& v : vertices) {
    const double r = v.norm();
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    rsum += r;
  }
  const double rmean = rsum / static_cast<double>(vertices.size());
  const bool on_sphere = rmean > 0.0 && (rmax - rmin) < 1e-9 * rmean;

  SurfaceMesh out;
  out.vertices = vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int i, int j) {
    const auto key = std::minmax(i, j);
    auto it = midpoint.find({key.first, key.second});
    if (it != midpoint.end()) return it->second;
    Vec3 m = (vertices[i] + vertices[j]) * 0.5;
    if (on_sphere) m = m * (rmean / m.norm());
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(m);
    midpoint[{key.first, key.second}] = idx;
    return idx;
  };

  out.triangles.reserve(triangles.size() * 4);
  for (const auto& tri : triangles) {
    const int a = tri[0], b = tri[1], c = tri[2];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    out.triangles.push_back({a, ab, ca});
    out.triangles.push_back({b, bc, ab});
    out.triangles.push_back({c, ca, bc});
    out.triangles.push_back({ab, bc, ca});
  }
  out.finalize();
  return out;
}

namespace {

// Signed volume via the divergence theorem; positive when triangles wind outward.
double signed_volume(const SurfaceMesh& mesh) {
  double vol = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    vol += dot(a, cross(b, c)) / 6.0;
  }
  return vol;
}

void orient_outward(SurfaceMesh& mesh) {
  if (signed_volume(mesh) < 0.0)
    for (auto& tri : mesh.triangles) std::swap(tri[1], tri[2]);
}

}  // namespace

SurfaceMesh make_icosphere(int level, double radius) {
  if (level < 0 || level > 8) throw ValidationError("icosphere: level must be in [0,8]");
  if (!(radius > 0.0)) throw ValidationError("icosphere: radius must be positive");

  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  SurfaceMesh mesh;
  mesh.vertices = {
      {-1, p, 0}, {1, p, 0},  {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
      {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1},  {-p, 0, -1}, {-p, 0, 1}};
  mesh.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                    {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                    {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                    {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (Vec3& v : mesh.vertices) v = v * (radius / v.norm());
  orient_outward(mesh);
  mesh.finalize();
  for (int l = 0; l < level; ++l) mesh = mesh.refined();
  // refined() keeps vertices on the detected sphere, but re-project to kill the
  // accumulated relative drift from the mean-radius estimate.
  for (Vec3& v : mesh.vertices) v = v * (radius / v.norm());
  mesh.finalize();
  return mesh;
}

SurfaceMesh make_cube(int n, double side) {
  if (n < 1 || n > 512) throw ValidationError("cube: subdivisions per edge must be in [1,512]");
  if (!(side > 0.0)) throw ValidationError("cube: side must be positive");

  SurfaceMesh mesh;
  // Weld shared face-boundary vertices via an integer lattice key: every vertex
  // coordinate is an integer multiple of side/(2n).
  std::map<std::array<int64_t, 3>, int> dedup;
  auto add_vertex = [&](const Vec3& v) {
    std::array<int64_t, 3> key;
    for (int k = 0; k < 3; ++k) key[k] = llround(v[k] * (2.0 * n / side));
    auto it = dedup.find(key);
    if (it != dedup.end()) return it->second;
    const int idx = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(v);
    dedup[key] = idx;
    return idx;
  };

  // Each face: unit direction pair (du, dv) with du x dv pointing outward.
  struct Face {
    Vec3 normal, du, dv;
  };
  const Face faces[6] = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},  {{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}},
      {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},  {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}},
      {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},  {{0, 0, -1}, {0, 1, 0}, {1, 0, 0}}};

  const double h = side / n;
  for (const Face& f : faces) {
    const Vec3 base = f.normal * (0.5 * side) - f.du * (0.5 * side) - f.dv * (0.5 * side);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int v00 = add_vertex(base + f.du * (i * h) + f.dv * (j * h));
        const int v10 = add_vertex(base + f.du * ((i + 1) * h) + f.dv * (j * h));
        const int v11 = add_vertex(base + f.du * ((i + 1) * h) + f.dv * ((j + 1) * h));
        const int v01 = add_vertex(base + f.du * (i * h) + f.dv * ((j + 1) * h));
        mesh.triangles.push_back({v00, v10, v11});
        mesh.triangles.push_back({v00, v11, v01});
      }
    }
  }
  orient_outward(mesh);
  mesh.finalize();
  return mesh;
}

SurfaceMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("mesh: cannot open " + path);
  int nv = 0, nt = 0;
  if (!(in >> nv >> nt) || nv < 3 || nt < 1 || nv > 20000000 || nt > 40000000)
    throw ValidationError("mesh: bad counts line in " + path);
  SurfaceMesh mesh;
  mesh.vertices.resize(nv);
  for (int i = 0; i < nv; ++i)
    if (!(in >> mesh.vertices[i].x >> mesh.vertices[i].y >> mesh.vertices[i].z))
      throw ValidationError("mesh: truncated vertex list in " + path);
  mesh.triangles.resize(nt);
  for (int t = 0; t < nt; ++t) {
    auto& tri = mesh.triangles[t];
    if (!(in >> tri[0] >> tri[1] >> tri[2]))
      throw ValidationError("mesh: truncated triangle list in " + path);
    for (int k = 0; k < 3; ++k)
      if (tri[k] < 0 || tri[k] >= nv)
        throw ValidationError("mesh: triangle index out of range in " + path);
  }
  mesh.finalize();
  return mesh;
}

void write_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("mesh: cannot write " + path);
  out << mesh.vertices.size() << " " << mesh.triangles.size() << "\n";
  for (const Vec3& v : mesh.vertices)
    out << fmt17(v.x) << " " << fmt17(v.y) << " " << fmt17(v.z) << "\n";
  for (const auto& tri : mesh.triangles)
    out << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  if (!out) throw ValidationError("mesh: write failed for " + path);
}

double tri_potential(const Vec3& p, const Vec3& v0, const Vec3& v1, const Vec3& v2) {
  // Edge-wise closed form for the integral of 1/|p-s| over a planar triangle.
  // Decomposition: height term w0 above the plane, in-plane foot p0, and per-edge
  // coordinates (t0 across the edge, l along it).
  const Vec3 nvec = cross(v1 - v0, v2 - v0);
  const double nlen = nvec.norm();
  if (!(nlen > 0.0)) return 0.0;
  const Vec3 nhat = nvec * (1.0 / nlen);
  const double w0 = dot(p - v0, nhat);
  const Vec3 p0 = p - nhat * w0;
  const double aw0 = std::fabs(w0);

  const Vec3 verts[3] = {v0, v1, v2};
  double total = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3& a = verts[e];
    const Vec3& b = verts[(e + 1) % 3];
    const Vec3 ab = b - a;
    const double len = ab.norm();
    if (!(len > 0.0)) continue;
    const Vec3 u = ab * (1.0 / len);
    const Vec3 m = cross(u, nhat);  // in-plane outward edge normal
    const double t0 = dot(a - p0, m);
    const double lm = dot(a - p0, u);
    const double lp = dot(b - p0, u);
    const double rm = (p - a).norm();
    const double rp = (p - b).norm();
    const double r0sq = t0 * t0 + w0 * w0;

    // p on (or vanishingly near) the edge's supporting line: the edge term tends
    // to zero, and both log/atan forms degenerate. Skip it.
    const double edge_scale = len + rm + rp;
    if (r0sq < 1e-28 * edge_scale * edge_scale) continue;

    // ln((rp+lp)/(rm+lm)) with the algebraically equivalent branch
    // (rm-lm)/(rp-lp) used when both projections are negative, where the
    // direct form suffers cancellation.
    double logterm;
    if (lp + lm < 0.0)
      logterm = std::log((rm - lm) / (rp - lp));
    else
      logterm = std::log((rp + lp) / (rm + lm));

    const double atp = std::atan2(t0 * lp, r0sq + aw0 * rp);
    const double atm = std::atan2(t0 * lm, r0sq + aw0 * rm);
    total += t0 * logterm - aw0 * (atp - atm);
  }
  return total;
}

namespace {

double tri_potential_quad_rec(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c,
                              int depth, double ratio) {
  const Vec3 cen = (a + b + c) * (1.0 / 3.0);
  const double diam = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  const double dist = (p - cen).norm();
  if (depth <= 0 || diam < ratio * dist) {
    // Degree-2 rule at the three edge midpoints; never samples the centroid, so a
    // singularity sitting exactly at the centroid stays finite.
    const double area = 0.5 * cross(b - a, c - a).norm();
    const Vec3 m0 = (a + b) * 0.5, m1 = (b + c) * 0.5, m2 = (c + a) * 0.5;
    return area / 3.0 *
           (1.0 / (p - m0).norm() + 1.0 / (p - m1).norm() + 1.0 / (p - m2).norm());
  }
  const Vec3 ab = (a + b) * 0.5, bc = (b + c) * 0.5, ca = (c + a) * 0.5;
  return tri_potential_quad_rec(p, a, ab, ca, depth - 1, ratio) +
         tri_potential_quad_rec(p, b, bc, ab, depth - 1, ratio) +
         tri_potential_quad_rec(p, c, ca, bc, depth - 1, ratio) +
         tri_potential_quad_rec(p, ab, bc, ca, depth - 1, ratio);
}

}  // namespace

double tri_potential_quad(const Vec3& p, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                          int max_depth, double ratio) {
  return tri_potential_quad_rec(p, v0, v1, v2, max_depth, ratio);
}

}  // namespace scat
