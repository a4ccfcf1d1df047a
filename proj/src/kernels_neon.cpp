// kernels_neon.cpp — NEON lanes for aarch64 builds (2-wide doubles).
#include "scat/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace scat::kern::detail {

void recip_dist_row_neon(const double* px, const double* py, const double* pz, size_t n,
                         double tx, double ty, double tz, double* out) {
  const float64x2_t vtx = vdupq_n_f64(tx);
  const float64x2_t vty = vdupq_n_f64(ty);
  const float64x2_t vtz = vdupq_n_f64(tz);
  const float64x2_t one = vdupq_n_f64(1.0);
  size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(px + j), vtx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(py + j), vty);
    const float64x2_t dz = vsubq_f64(vld1q_f64(pz + j), vtz);
    float64x2_t d2 = vmulq_f64(dx, dx);
    d2 = vfmaq_f64(d2, dy, dy);
    d2 = vfmaq_f64(d2, dz, dz);
    vst1q_f64(out + j, vdivq_f64(one, vsqrtq_f64(d2)));
  }
  for (; j < n; ++j) {
    const double dx = px[j] - tx;
    const double dy = py[j] - ty;
    const double dz = pz[j] - tz;
    out[j] = 1.0 / std::sqrt(std::fma(dz, dz, std::fma(dy, dy, dx * dx)));
  }
}

PairExtremes pair_extremes_neon(const double* px, const double* py, const double* pz,
                                size_t n) {
  PairExtremes e{std::numeric_limits<double>::infinity(), 0.0};
  float64x2_t vmin = vdupq_n_f64(e.min_center);
  float64x2_t vmax = vdupq_n_f64(0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    const float64x2_t xi = vdupq_n_f64(px[i]);
    const float64x2_t yi = vdupq_n_f64(py[i]);
    const float64x2_t zi = vdupq_n_f64(pz[i]);
    size_t j = i + 1;
    for (; j + 2 <= n; j += 2) {
      const float64x2_t dx = vsubq_f64(vld1q_f64(px + j), xi);
      const float64x2_t dy = vsubq_f64(vld1q_f64(py + j), yi);
      const float64x2_t dz = vsubq_f64(vld1q_f64(pz + j), zi);
      float64x2_t d2 = vmulq_f64(dx, dx);
      d2 = vfmaq_f64(d2, dy, dy);
      d2 = vfmaq_f64(d2, dz, dz);
      vmin = vminq_f64(vmin, d2);
      vmax = vmaxq_f64(vmax, d2);
    }
    for (; j < n; ++j) {
      const double dx = px[j] - px[i];
      const double dy = py[j] - py[i];
      const double dz = pz[j] - pz[i];
      const double d2 = std::fma(dz, dz, std::fma(dy, dy, dx * dx));
      if (d2 < e.min_center) e.min_center = d2;
      if (d2 > e.max_center) e.max_center = d2;
    }
  }
  double lanes[2];
  vst1q_f64(lanes, vmin);
  for (double v : lanes)
    if (v < e.min_center) e.min_center = v;
  vst1q_f64(lanes, vmax);
  for (double v : lanes)
    if (v > e.max_center) e.max_center = v;
  e.min_center = std::sqrt(e.min_center);
  e.max_center = std::sqrt(e.max_center);
  return e;
}

}  // namespace scat::kern::detail

#endif  // aarch64
