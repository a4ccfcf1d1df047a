// dirgrid.cpp — Fibonacci hemisphere grid mirrored to a negation-closed sphere grid.
#include "scat/dirgrid.hpp"

#include <cmath>

namespace scat {

DirectionGrid antipodal_grid(int n) {
  if (n < 2 || (n % 2) != 0)
    throw ValidationError("direction grid size must be even and >= 2, got " +
                          std::to_string(n));
  const int half = n / 2;
  DirectionGrid g;
  g.dirs.reserve(n);
  // Golden-angle spiral on the open upper hemisphere: z in (0,1), azimuth by the golden
  // angle. Strictly positive z keeps the mirrored copy disjoint from the originals.
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < half; ++k) {
    const double zc = (k + 0.5) / half;  // (0, 1)
    const double rho = std::sqrt(1.0 - zc * zc);
    const double phi = golden * k;
    g.dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), zc});
  }
  for (int k = 0; k < half; ++k) g.dirs.push_back(-g.dirs[k]);
  return g;
}

int find_negated(const std::vector<Vec3>& dirs, const Vec3& v, double tol) {
  for (size_t i = 0; i < dirs.size(); ++i) {
    const Vec3 d = dirs[i] + v;
    if (std::fabs(d.x) <= tol && std::fabs(d.y) <= tol && std::fabs(d.z) <= tol)
      return static_cast<int>(i);
  }
  return -1;
}

}  // namespace scat
