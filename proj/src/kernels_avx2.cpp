// kernels_avx2.cpp — AVX2 lanes; this translation unit alone is built with -mavx2.
#include "scat/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace scat::kern::detail {

void recip_dist_row_avx2(const double* px, const double* py, const double* pz, size_t n,
                         double tx, double ty, double tz, double* out) {
  const __m256d vtx = _mm256_set1_pd(tx);
  const __m256d vty = _mm256_set1_pd(ty);
  const __m256d vtz = _mm256_set1_pd(tz);
  const __m256d one = _mm256_set1_pd(1.0);
  size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + j), vtx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + j), vty);
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pz + j), vtz);
    __m256d d2 = _mm256_mul_pd(dx, dx);
    d2 = _mm256_fmadd_pd(dy, dy, d2);
    d2 = _mm256_fmadd_pd(dz, dz, d2);
    _mm256_storeu_pd(out + j, _mm256_div_pd(one, _mm256_sqrt_pd(d2)));
  }
  for (; j < n; ++j) {
    const double dx = px[j] - tx;
    const double dy = py[j] - ty;
    const double dz = pz[j] - tz;
    out[j] = 1.0 / std::sqrt(std::fma(dz, dz, std::fma(dy, dy, dx * dx)));
  }
}

PairExtremes pair_extremes_avx2(const double* px, const double* py, const double* pz,
                                size_t n) {
  PairExtremes e{std::numeric_limits<double>::infinity(), 0.0};
  __m256d vmin = _mm256_set1_pd(e.min_center);
  __m256d vmax = _mm256_setzero_pd();
  for (size_t i = 0; i + 1 < n; ++i) {
    const __m256d xi = _mm256_set1_pd(px[i]);
    const __m256d yi = _mm256_set1_pd(py[i]);
    const __m256d zi = _mm256_set1_pd(pz[i]);
    size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + j), xi);
      const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + j), yi);
      const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pz + j), zi);
      __m256d d2 = _mm256_mul_pd(dx, dx);
      d2 = _mm256_fmadd_pd(dy, dy, d2);
      d2 = _mm256_fmadd_pd(dz, dz, d2);
      vmin = _mm256_min_pd(vmin, d2);
      vmax = _mm256_max_pd(vmax, d2);
    }
    for (; j < n; ++j) {
      const double dx = px[j] - px[i];
      const double dy = py[j] - py[i];
      const double dz = pz[j] - pz[i];
      const double d2 = std::fma(dz, dz, std::fma(dy, dy, dx * dx));
      if (d2 < e.min_center) e.min_center = d2;  // squared for now, rooted below
      if (d2 > e.max_center) e.max_center = d2;
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmin);
  for (double v : lanes)
    if (v < e.min_center) e.min_center = v;
  _mm256_store_pd(lanes, vmax);
  for (double v : lanes)
    if (v > e.max_center) e.max_center = v;
  e.min_center = std::sqrt(e.min_center);
  e.max_center = std::sqrt(e.max_center);
  return e;
}

}  // namespace scat::kern::detail

#endif  // x86_64
