// kernels.hpp — hot numeric loops with scalar reference and SIMD variants.
//
// Two loops dominate profiles: reciprocal-distance rows during capacitance matrix
// assembly (O(N^2) entries, one kernel evaluation each) and pairwise separation scans
// during placement validation (O(M^2)). Each has a scalar reference implementation and
// an AVX2 (x86) / NEON (aarch64) variant; the active variant is chosen once at runtime
// from CPU capabilities. Set SCAT_SIMD=scalar in the environment to force the reference
// lane. Variants agree to a few ulp (division/sqrt are correctly rounded, but compilers
// may contract multiply-adds differently), which the kernel equivalence tests pin down.
#pragma once

#include <cstddef>

namespace scat::kern {

// out[j] = 1 / sqrt((px[j]-tx)^2 + (py[j]-ty)^2 + (pz[j]-tz)^2) for j in [0, n).
void recip_dist_row(const double* px, const double* py, const double* pz, size_t n,
                    double tx, double ty, double tz, double* out);

// Pairwise center-distance extremes over all i<j pairs.
struct PairExtremes {
  double min_center;  // min |p_i - p_j|
  double max_center;  // max |p_i - p_j|
};
PairExtremes pair_extremes(const double* px, const double* py, const double* pz, size_t n);

/// Name of the dispatch-selected lane: "avx2", "neon" or "scalar".
const char* active_lane();

namespace detail {
// Direct entry points for the equivalence tests.
void recip_dist_row_scalar(const double* px, const double* py, const double* pz, size_t n,
                           double tx, double ty, double tz, double* out);
PairExtremes pair_extremes_scalar(const double* px, const double* py, const double* pz,
                                  size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void recip_dist_row_avx2(const double* px, const double* py, const double* pz, size_t n,
                         double tx, double ty, double tz, double* out);
PairExtremes pair_extremes_avx2(const double* px, const double* py, const double* pz,
                                size_t n);
#endif
#if defined(__aarch64__)
void recip_dist_row_neon(const double* px, const double* py, const double* pz, size_t n,
                         double tx, double ty, double tz, double* out);
PairExtremes pair_extremes_neon(const double* px, const double* py, const double* pz,
                                size_t n);
#endif
}  // namespace detail

}  // namespace scat::kern
