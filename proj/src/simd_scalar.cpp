#include "aircoh/simd.hpp"

namespace aircoh::simd::scalar {

// Four interleaved partial sums; the vector variants use the same lane count
// so that the reductions differ only in fused multiply-add rounding.

double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double s = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot2(const double* a, const double* re, const double* im, std::size_t n, double* out_re, double* out_im) {
  double r[4] = {0, 0, 0, 0};
  double m[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) {
      r[l] += a[i + l] * re[i + l];
      m[l] += a[i + l] * im[i + l];
    }
  }
  double sr = (r[0] + r[1]) + (r[2] + r[3]);
  double si = (m[0] + m[1]) + (m[2] + m[3]);
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

}  // namespace aircoh::simd::scalar
