#pragma once

#include <cstddef>

namespace aircoh::simd {

#define AIRCOH_DECLARE_SIMD_VARIANT(ns)                                                                     \
  namespace ns {                                                                                           \
  double dot(const double* a, const double* b, std::size_t n);                                             \
  void dot2(const double* a, const double* re, const double* im, std::size_t n, double* out_re,            \
            double* out_im);                                                                               \
  void matvec2(const double* kre, const double* kim, std::size_t n, std::size_t ld, const double* v,       \
               double* out_re, double* out_im);                                                            \
  }

AIRCOH_DECLARE_SIMD_VARIANT(avx2)
AIRCOH_DECLARE_SIMD_VARIANT(neon)

#undef AIRCOH_DECLARE_SIMD_VARIANT

}  // namespace aircoh::simd
