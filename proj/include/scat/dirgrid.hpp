// dirgrid.hpp — negation-closed unit-sphere direction grids.
//
// Grids are built from a golden-angle (Fibonacci) point set on the upper hemisphere,
// mirrored through the origin, so every direction's antipode is also in the grid at a
// known index. Sup-norm comparisons use the full grid; the reciprocity check relies on
// the exact antipodal pairing.
#pragma once

#include <vector>

#include "scat/common.hpp"

namespace scat {

struct DirectionGrid {
  std::vector<Vec3> dirs;      // size N; first N/2 have z > 0, the rest are their negations
  // Index of the antipode of dirs[i].
  int neg_index(int i) const {
    const int half = static_cast<int>(dirs.size()) / 2;
    return i < half ? i + half : i - half;
  }
};

// Builds the standard grid of n directions (n even, n >= 2).
DirectionGrid antipodal_grid(int n);

// Finds the index of -v in `dirs` within tolerance; -1 if absent.
int find_negated(const std::vector<Vec3>& dirs, const Vec3& v, double tol = 1e-12);

}  // namespace scat
