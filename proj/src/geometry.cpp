// geometry.cpp — cell partition, obstacle placement, validation, placement IO.
#include "scat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

#include "scat/csv.hpp"
#include "scat/kernels.hpp"
#include "scat/rng.hpp"

namespace scat {

void Domain::validate() const {
  if (!(hi.x > lo.x && hi.y > lo.y && hi.z > lo.z))
    throw ValidationError("domain: upper corner must exceed lower corner componentwise");
}

bool RegionShape::contains(const Vec3& p) const {
  if (kind == kBox)
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
           p.z <= hi.z;
  return dist(p, center) <= radius;
}

RegionShape RegionShape::box(const Vec3& lo, const Vec3& hi) {
  if (!(hi.x > lo.x && hi.y > lo.y && hi.z > lo.z))
    throw ValidationError("region box: upper corner must exceed lower corner");
  RegionShape r;
  r.kind = kBox;
  r.lo = lo;
  r.hi = hi;
  return r;
}

RegionShape RegionShape::ball(const Vec3& center, double radius) {
  if (!(radius > 0.0)) throw ValidationError("region ball: radius must be positive");
  RegionShape r;
  r.kind = kBall;
  r.center = center;
  r.radius = radius;
  return r;
}

DensityField DensityField::constant(double value) {
  if (!(value >= 0.0)) throw ValidationError("density: constant value must be >= 0");
  DensityField f;
  f.kind_ = kConstant;
  f.value_ = value;
  return f;
}

DensityField DensityField::piecewise(std::vector<std::pair<RegionShape, double>> regions) {
  if (regions.empty()) throw ValidationError("density: empty region list");
  for (const auto& [shape, value] : regions)
    if (!(value >= 0.0)) throw ValidationError("density: region value must be >= 0");
  DensityField f;
  f.kind_ = kPiecewise;
  f.regions_ = std::move(regions);
  return f;
}

DensityField DensityField::expression(const std::string& text, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ValidationError("density: Hölder exponent must be in (0,1]");
  DensityField f;
  f.kind_ = kExpression;
  f.expr_ = std::make_shared<Expr>(Expr::parse(text));
  f.text_ = text;
  f.gamma_ = gamma;
  return f;
}

double DensityField::operator()(const Vec3& p) const {
  double v = 0.0;
  switch (kind_) {
    case kConstant:
      v = value_;
      break;
    case kPiecewise: {
      bool found = false;
      for (const auto& [shape, value] : regions_) {
        if (shape.contains(p)) {
          v = value;
          found = true;
          break;
        }
      }
      if (!found)
        throw ValidationError("density: region list does not cover sample point (" +
                              fmt17(p.x) + "," + fmt17(p.y) + "," + fmt17(p.z) + ")");
      break;
    }
    case kExpression:
      v = expr_->eval(p);
      break;
  }
  if (!(v >= 0.0))
    throw ValidationError("density: negative value " + fmt17(v) + " at (" + fmt17(p.x) +
                          "," + fmt17(p.y) + "," + fmt17(p.z) + ")");
  return v;
}

int CellGrid::total_obstacles() const {
  int m = 0;
  for (const Cell& c : cells) m += c.count;
  return m;
}

namespace {

struct Raster {
  int n1 = 0, n2 = 0, n3 = 0;
  long product() const { return static_cast<long>(n1) * n2 * n3; }
};

// Chooses axis counts with need <= n1·n2·n3 <= maxprod minimizing the box aspect
// ratio (max pitch / min pitch); ties prefer fewer boxes, then lexicographic.
Raster pick_raster(const Vec3& ext, long need, long maxprod) {
  if (need > maxprod)
    throw ValidationError(
        "partition: prescribed cell volume does not fit in the domain (" +
        std::to_string(need) + " cells needed, room for " + std::to_string(maxprod) + ")");
  Raster best;
  double best_ratio = std::numeric_limits<double>::infinity();
  long best_prod = std::numeric_limits<long>::max();
  for (long n1 = 1; n1 <= maxprod; ++n1) {
    for (long n2 = 1; n1 * n2 <= maxprod; ++n2) {
      const long n3_lo = std::max(1L, (need + n1 * n2 - 1) / (n1 * n2));
      const long n3_hi = maxprod / (n1 * n2);
      for (long n3 = n3_lo; n3 <= n3_hi; ++n3) {
        const double p1 = ext.x / n1, p2 = ext.y / n2, p3 = ext.z / n3;
        const double ratio =
            std::max({p1, p2, p3}) / std::min({p1, p2, p3});
        const long prod = n1 * n2 * n3;
        const auto key = std::make_tuple(ratio, prod, n1, n2, n3);
        const auto best_key =
            std::make_tuple(best_ratio, best_prod, static_cast<long>(best.n1),
                            static_cast<long>(best.n2), static_cast<long>(best.n3));
        if (key < best_key) {
          best = {static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(n3)};
          best_ratio = ratio;
          best_prod = prod;
        }
      }
    }
  }
  return best;
}

// Builds `need` cells of prescribed volumes from the first raster boxes in
// x-fastest sweep order, shrinking each isotropically about its center.
CellGrid build_cells(const Domain& domain, long need, long maxprod,
                     const std::function<std::pair<double, int>(const Vec3&)>& cell_spec) {
  const Raster raster = pick_raster(domain.extent(), need, maxprod);
  const Vec3 ext = domain.extent();
  const double p1 = ext.x / raster.n1, p2 = ext.y / raster.n2, p3 = ext.z / raster.n3;
  const double boxvol = p1 * p2 * p3;

  CellGrid grid;
  grid.cells.reserve(need);
  double total_volume = 0.0;
  long placed = 0;
  for (int i3 = 0; i3 < raster.n3 && placed < need; ++i3) {
    for (int i2 = 0; i2 < raster.n2 && placed < need; ++i2) {
      for (int i1 = 0; i1 < raster.n1 && placed < need; ++i1, ++placed) {
        const Vec3 blo = domain.lo + Vec3{i1 * p1, i2 * p2, i3 * p3};
        const Vec3 center = blo + Vec3{0.5 * p1, 0.5 * p2, 0.5 * p3};
        const auto [volume, count] = cell_spec(center);
        const double factor = std::min(1.0, std::cbrt(volume / boxvol));
        const Vec3 half{0.5 * p1 * factor, 0.5 * p2 * factor, 0.5 * p3 * factor};
        Cell cell;
        cell.center = center;
        cell.lo = center - half;
        cell.hi = center + half;
        cell.volume = volume;
        cell.count = count;
        grid.cells.push_back(cell);
        total_volume += volume;
      }
    }
  }
  if (total_volume > domain.volume() * (1.0 + 1e-12))
    throw ValidationError("partition: total cell volume " + fmt17(total_volume) +
                          " exceeds domain volume " + fmt17(domain.volume()));
  return grid;
}

}  // namespace

CellGrid partition_domain(const Domain& domain, double a, const DensityField& k) {
  domain.validate();
  if (!(a > 0.0 && a < 1.0))
    throw ValidationError("partition: scale a must lie in (0,1) — no cells otherwise");
  const long ncells = static_cast<long>(std::floor(1.0 / a + 1e-9));
  const long maxprod =
      std::max(ncells, static_cast<long>(std::floor(domain.volume() / a + 1e-9)));

  double kmax = 0.0;
  CellGrid grid = build_cells(domain, ncells, maxprod, [&](const Vec3& center) {
    const double kv = k(center);
    const int count = static_cast<int>(std::floor(kv + 1.0));
    const double volume = a * count / (kv + 1.0);
    kmax = std::max(kmax, kv + 1.0);
    return std::make_pair(volume, count);
  });
  grid.kmax = kmax;
  return grid;
}

CellGrid partition_domain_dilute(const Domain& domain, double a, double s) {
  domain.validate();
  if (!(a > 0.0 && a < 1.0)) throw ValidationError("partition: scale a must lie in (0,1)");
  if (!(s > 0.0 && s < 1.0))
    throw ValidationError("partition: dilute exponent s must lie in (0,1)");
  const long m = static_cast<long>(std::ceil(std::pow(a, -s) - 1e-9));
  const long maxprod =
      std::max(m, static_cast<long>(std::floor(domain.volume() / a + 1e-9)));
  CellGrid grid = build_cells(domain, m, maxprod,
                              [&](const Vec3&) { return std::make_pair(a, 1); });
  grid.kmax = 1.0;
  return grid;
}

const std::vector<ShapeDef>& shape_table() {
  // Unit-diameter reference bodies. The sphere value is analytic (radius 1/2 →
  // 4π/2). The cube value (side 1/√3 so the space diagonal is 1) comes from this
  // project's own refinement study: side-1 cube capacitance extrapolates to
  // 8.30264 over mesh levels n = 8..32 (tools/cube_study), divided by √3.
  static const std::vector<ShapeDef> table = {
      {"sphere", 2.0 * kPi, 1.0},
      {"cube", 8.30264 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)},
  };
  return table;
}

int shape_id_by_name(const std::string& name) {
  const auto& table = shape_table();
  for (size_t i = 0; i < table.size(); ++i)
    if (table[i].name == name) return static_cast<int>(i);
  return -1;
}

int ShapeAssignment::shape_at(const Vec3& p) const {
  for (const auto& [region, id] : per_region)
    if (region.contains(p)) return id;
  return default_id;
}

void ObstacleSet::compute_pair_stats() {
  const int m = size();
  if (m < 2) {
    d = std::numeric_limits<double>::infinity();
    min_center_dist = std::numeric_limits<double>::infinity();
    max_center_dist = 0.0;
    return;
  }
  std::vector<double> px(m), py(m), pz(m);
  for (int i = 0; i < m; ++i) {
    px[i] = obstacles[i].center.x;
    py[i] = obstacles[i].center.y;
    pz[i] = obstacles[i].center.z;
  }
  const kern::PairExtremes ex = kern::pair_extremes(px.data(), py.data(), pz.data(), m);
  min_center_dist = ex.min_center;
  max_center_dist = ex.max_center;
  d = min_center_dist - a;  // surface distance for diameter-a bodies
}

namespace {

// In-cell center positions for one cell; throws with the cell index when the
// required spacing cannot fit.
std::vector<Vec3> cell_layout(const Cell& cell, int cell_index, double a,
                              double min_center_spacing) {
  const Vec3 ext = cell.hi - cell.lo;
  const Vec3 free{ext.x - a, ext.y - a, ext.z - a};  // admissible center extent
  if (cell.count > 1 && (free.x < 0.0 || free.y < 0.0 || free.z < 0.0))
    throw ValidationError("placement: cell " + std::to_string(cell_index) +
                          " is smaller than the obstacle diameter");

  if (cell.count == 1) return {cell.center};

  if (cell.count == 2) {
    int axis = 0;
    for (int i = 1; i < 3; ++i)
      if (ext[i] > ext[axis]) axis = i;
    const double spacing = std::max(min_center_spacing, ext[axis] / 4.0);
    if (spacing > ext[axis] - a)
      throw ValidationError("placement: cell " + std::to_string(cell_index) +
                            " cannot hold 2 obstacles at spacing " + fmt17(spacing));
    Vec3 offset{0, 0, 0};
    offset[axis] = 0.5 * spacing;
    return {cell.center - offset, cell.center + offset};
  }

  // count >= 3: near-cubic sub-lattice maximizing the minimum spacing.
  const int count = cell.count;
  int best[3] = {0, 0, 0};
  double best_spacing = -1.0;
  long best_prod = std::numeric_limits<long>::max();
  for (int m1 = 1; m1 <= count; ++m1) {
    for (int m2 = 1; m2 <= count; ++m2) {
      for (int m3 = 1; m3 <= count; ++m3) {
        const long prod = static_cast<long>(m1) * m2 * m3;
        if (prod < count) continue;
        double spacing = std::numeric_limits<double>::infinity();
        const int ms[3] = {m1, m2, m3};
        for (int i = 0; i < 3; ++i)
          if (ms[i] >= 2) spacing = std::min(spacing, free[i] / ms[i]);
        const bool better =
            spacing > best_spacing || (spacing == best_spacing && prod < best_prod);
        if (better) {
          best[0] = m1;
          best[1] = m2;
          best[2] = m3;
          best_spacing = spacing;
          best_prod = prod;
        }
      }
    }
  }
  if (best_spacing < min_center_spacing)
    throw ValidationError("placement: cell " + std::to_string(cell_index) + " cannot hold " +
                          std::to_string(count) + " obstacles at spacing " +
                          fmt17(min_center_spacing) + " (best achievable " +
                          fmt17(best_spacing) + ")");
  std::vector<Vec3> out;
  out.reserve(count);
  for (int k3 = 0; k3 < best[2] && static_cast<int>(out.size()) < count; ++k3)
    for (int k2 = 0; k2 < best[1] && static_cast<int>(out.size()) < count; ++k2)
      for (int k1 = 0; k1 < best[0] && static_cast<int>(out.size()) < count; ++k1) {
        Vec3 p;
        const int ks[3] = {k1, k2, k3};
        for (int i = 0; i < 3; ++i)
          p[i] = cell.lo[i] + 0.5 * a + (ks[i] + 0.5) * free[i] / best[i];
        out.push_back(p);
      }
  return out;
}

}  // namespace

ObstacleSet place_obstacles(const CellGrid& grid, double a, double t,
                            const ShapeAssignment& shapes, uint64_t seed,
                            const PlacementOptions& opt) {
  if (grid.cells.empty()) throw ValidationError("placement: empty cell grid");
  if (!(a > 0.0)) throw ValidationError("placement: a must be positive");
  if (!(t >= 1.0 / 3.0 && t < 5.0 / 12.0))
    throw ValidationError("placement: separation exponent t must lie in [1/3, 5/12)");
  if (!(opt.jitter_frac >= 0.0 && opt.jitter_frac <= 1.0))
    throw ValidationError("placement: jitter fraction must lie in [0,1]");

  const double target = std::pow(a, t);  // required surface separation a^t
  const auto& table = shape_table();

  ObstacleSet set;
  set.a = a;
  set.t = t;
  std::vector<int> cell_of, slot_of;
  for (size_t m = 0; m < grid.cells.size(); ++m) {
    const std::vector<Vec3> centers =
        cell_layout(grid.cells[m], static_cast<int>(m), a, target + a);
    for (size_t s = 0; s < centers.size(); ++s) {
      const int id = shapes.shape_at(centers[s]);
      if (id < 0 || id >= static_cast<int>(table.size()))
        throw ValidationError("placement: unknown shape id " + std::to_string(id));
      Obstacle ob;
      ob.center = centers[s];
      ob.a = a;
      ob.shape_id = id;
      ob.cbar = table[id].cbar_unit;
      ob.t_flat = table[id].t_flat;
      set.obstacles.push_back(ob);
      cell_of.push_back(static_cast<int>(m));
      slot_of.push_back(static_cast<int>(s));
    }
  }

  if (opt.jitter_frac > 0.0) {
    set.compute_pair_stats();
    double gap_margin = std::numeric_limits<double>::infinity();
    if (set.size() >= 2) {
      const double gap0 = set.min_center_dist - a;  // unjittered surface gap
      if (!(gap0 > 0.0))
        throw ValidationError("placement: unjittered layout already overlaps (gap " +
                              fmt17(gap0) + ")");
      // Per-axis jitter delta moves a pair's distance by at most 2·sqrt(3)·delta
      // < 4·delta, so a quarter of the spare gap preserves the separation target
      // (or, past the target, at least keeps the bodies disjoint).
      gap_margin = gap0 >= target ? (gap0 - target) / 4.0 : gap0 / 4.0;
    }
    for (int i = 0; i < set.size(); ++i) {
      const Cell& cell = grid.cells[cell_of[i]];
      Vec3& p = set.obstacles[i].center;
      double slack = std::numeric_limits<double>::infinity();
      for (int axis = 0; axis < 3; ++axis)
        slack = std::min({slack, p[axis] - (cell.lo[axis] + 0.5 * a),
                          (cell.hi[axis] - 0.5 * a) - p[axis]});
      const double amp = opt.jitter_frac * std::min(std::max(slack, 0.0), gap_margin);
      Rng rng(seed, static_cast<uint64_t>(cell_of[i]), static_cast<uint64_t>(slot_of[i]));
      for (int axis = 0; axis < 3; ++axis) p[axis] += rng.symmetric(amp);
    }
  }

  set.compute_pair_stats();
  if (opt.require_separation && set.size() >= 2 && set.d < target * (1.0 - 1e-12))
    throw ValidationError("placement: realized separation " + fmt17(set.d) +
                          " is below the target " + fmt17(target) +
                          " (infeasible at this scale/domain)");
  return set;
}

ValidationReport validate_set(const ObstacleSet& set, double kappa) {
  if (set.size() < 1) throw ValidationError("validate: empty obstacle set");
  if (!(kappa > 0.0)) throw ValidationError("validate: wavenumber must be positive");

  ValidationReport rep;
  rep.separation_target = std::pow(set.a, set.t);
  rep.diam_limit = kPi / (2.0 * kappa);

  const int m = set.size();
  if (m == 1) {
    rep.d = std::numeric_limits<double>::infinity();
    rep.min_center_dist = std::numeric_limits<double>::infinity();
    rep.max_center_dist = 0.0;
    rep.min_cos = 1.0;  // vacuous: no pairs
    rep.set_diameter = set.a;
    rep.separation_ok = rep.no_overlap = rep.min_cos_ok = true;
  } else {
    std::vector<double> px(m), py(m), pz(m);
    for (int i = 0; i < m; ++i) {
      px[i] = set.obstacles[i].center.x;
      py[i] = set.obstacles[i].center.y;
      pz[i] = set.obstacles[i].center.z;
    }
    const kern::PairExtremes ex = kern::pair_extremes(px.data(), py.data(), pz.data(), m);
    rep.min_center_dist = ex.min_center;
    rep.max_center_dist = ex.max_center;
    rep.d = ex.min_center - set.a;
    rep.set_diameter = ex.max_center + set.a;
    if (kappa * ex.max_center <= kPi) {
      // cos decreases over [0, π], so the minimum sits at the farthest pair.
      rep.min_cos = std::cos(kappa * ex.max_center);
    } else {
      double mc = 1.0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          mc = std::min(mc, std::cos(kappa * dist(set.obstacles[i].center,
                                                  set.obstacles[j].center)));
      rep.min_cos = mc;
    }
    rep.separation_ok = rep.d >= rep.separation_target * (1.0 - 1e-12);
    rep.no_overlap = rep.min_center_dist >= set.a;
    if (!rep.no_overlap) {
      for (int i = 0; i < m && rep.overlap_first < 0; ++i)
        for (int j = i + 1; j < m; ++j)
          if (dist(set.obstacles[i].center, set.obstacles[j].center) < set.a) {
            rep.overlap_first = i;
            rep.overlap_second = j;
            break;
          }
    }
    rep.min_cos_ok = rep.min_cos >= 0.0;
  }
  rep.non_flat_ok = true;
  for (const Obstacle& ob : set.obstacles)
    if (!(ob.t_flat > 0.0 && ob.t_flat <= 1.0)) rep.non_flat_ok = false;
  rep.diam_ok = rep.set_diameter < rep.diam_limit;
  return rep;
}

void write_placement(const ObstacleSet& set, const std::string& path, uint64_t seed) {
  CsvHeader header;
  header.a = fmt17(set.a);
  header.t = fmt17(set.t);
  header.seed = std::to_string(seed);
  CsvWriter out(path, header, "id,x,y,z,a,shape_id,cbar");
  for (int i = 0; i < set.size(); ++i) {
    const Obstacle& ob = set.obstacles[i];
    out.row({std::to_string(i), fmt17(ob.center.x), fmt17(ob.center.y), fmt17(ob.center.z),
             fmt17(ob.a), std::to_string(ob.shape_id), fmt17(ob.cbar)});
  }
}

ObstacleSet read_placement(const std::string& path) {
  const CsvFile file = CsvFile::read(path);
  const int cx = file.column_index("x"), cy = file.column_index("y"),
            cz = file.column_index("z"), ca = file.column_index("a"),
            cs = file.column_index("shape_id"), cc = file.column_index("cbar");
  ObstacleSet set;
  const auto& table = shape_table();
  for (const auto& row : file.rows) {
    Obstacle ob;
    ob.center = {std::stod(row[cx]), std::stod(row[cy]), std::stod(row[cz])};
    ob.a = std::stod(row[ca]);
    ob.shape_id = std::stoi(row[cs]);
    ob.cbar = std::stod(row[cc]);
    if (ob.shape_id < 0 || ob.shape_id >= static_cast<int>(table.size()))
      throw ValidationError("placement csv: unknown shape id in " + path);
    ob.t_flat = table[ob.shape_id].t_flat;
    set.obstacles.push_back(ob);
    set.a = std::max(set.a, ob.a);
  }
  if (set.obstacles.empty()) throw ValidationError("placement csv: no rows in " + path);
  if (file.header.a != "none") set.a = std::stod(file.header.a);
  set.t = file.header.t == "none" ? 1.0 / 3.0 : std::stod(file.header.t);
  set.compute_pair_stats();
  return set;
}

}  // namespace scat
