// kernels.cpp — scalar reference lanes and the runtime dispatcher.
#include "scat/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace scat::kern {

namespace detail {

void recip_dist_row_scalar(const double* px, const double* py, const double* pz, size_t n,
                           double tx, double ty, double tz, double* out) {
  for (size_t j = 0; j < n; ++j) {
    const double dx = px[j] - tx;
    const double dy = py[j] - ty;
    const double dz = pz[j] - tz;
    out[j] = 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
  }
}

PairExtremes pair_extremes_scalar(const double* px, const double* py, const double* pz,
                                  size_t n) {
  PairExtremes e{std::numeric_limits<double>::infinity(), 0.0};
  for (size_t i = 0; i + 1 < n; ++i) {
    const double xi = px[i], yi = py[i], zi = pz[i];
    for (size_t j = i + 1; j < n; ++j) {
      const double dx = px[j] - xi;
      const double dy = py[j] - yi;
      const double dz = pz[j] - zi;
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (d2 < e.min_center * e.min_center) e.min_center = std::sqrt(d2);
      if (d2 > e.max_center * e.max_center) e.max_center = std::sqrt(d2);
    }
  }
  return e;
}

}  // namespace detail

namespace {

using RowFn = void (*)(const double*, const double*, const double*, size_t, double, double,
                       double, double*);
using PairFn = PairExtremes (*)(const double*, const double*, const double*, size_t);

struct Dispatch {
  RowFn row = detail::recip_dist_row_scalar;
  PairFn pair = detail::pair_extremes_scalar;
  const char* lane = "scalar";

  Dispatch() {
    const char* force = std::getenv("SCAT_SIMD");
    if (force && std::strcmp(force, "scalar") == 0) return;
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) {
      row = detail::recip_dist_row_avx2;
      pair = detail::pair_extremes_avx2;
      lane = "avx2";
    }
#elif defined(__aarch64__)
    row = detail::recip_dist_row_neon;
    pair = detail::pair_extremes_neon;
    lane = "neon";
#endif
  }
};

const Dispatch& dispatch() {
  static const Dispatch d;
  return d;
}

}  // namespace

void recip_dist_row(const double* px, const double* py, const double* pz, size_t n,
                    double tx, double ty, double tz, double* out) {
  dispatch().row(px, py, pz, n, tx, ty, tz, out);
}

PairExtremes pair_extremes(const double* px, const double* py, const double* pz, size_t n) {
  return dispatch().pair(px, py, pz, n);
}

const char* active_lane() { return dispatch().lane; }

}  // namespace scat::kern
