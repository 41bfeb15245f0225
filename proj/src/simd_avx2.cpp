// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#if defined(__x86_64__) && defined(AIRCOH_HAVE_AVX2)

#include <immintrin.h>

#include "simd_variants.hpp"

namespace aircoh::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void dot2(const double* a, const double* re, const double* im, std::size_t n, double* out_re, double* out_im) {
  __m256d ar = _mm256_setzero_pd();
  __m256d ai = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    ar = _mm256_fmadd_pd(va, _mm256_loadu_pd(re + i), ar);
    ai = _mm256_fmadd_pd(va, _mm256_loadu_pd(im + i), ai);
  }
  double sr = hsum(ar);
  double si = hsum(ai);
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

}  // namespace aircoh::simd::avx2

#endif
