#if defined(__aarch64__)

#include <arm_neon.h>

#include "simd_variants.hpp"

namespace aircoh::simd::neon {
namespace {

// Two float64x2 accumulators give the same four-lane grouping as the
// scalar reference.
struct Acc4 {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  double sum() const {
    return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) + (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
  }
};

inline void fma4(Acc4& acc, const double* a, const double* b) {
  acc.lo = vfmaq_f64(acc.lo, vld1q_f64(a), vld1q_f64(b));
  acc.hi = vfmaq_f64(acc.hi, vld1q_f64(a + 2), vld1q_f64(b + 2));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  Acc4 acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) fma4(acc, a + i, b + i);
  double s = acc.sum();
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot2(const double* a, const double* re, const double* im, std::size_t n, double* out_re, double* out_im) {
  Acc4 ar, ai;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    fma4(ar, a + i, re + i);
    fma4(ai, a + i, im + i);
  }
  double sr = ar.sum();
  double si = ai.sum();
  for (; i < n; ++i) {
    sr += a[i] * re[i];
    si += a[i] * im[i];
  }
  *out_re = sr;
  *out_im = si;
}

void matvec2(const double* kre, const double* kim, std::size_t n, std::size_t ld, const double* v, double* out_re,
             double* out_im) {
  for (std::size_t row = 0; row < n; ++row) {
    dot2(v, kre + row * ld, kim + row * ld, n, out_re + row, out_im + row);
  }
}

}  // namespace aircoh::simd::neon

#endif
