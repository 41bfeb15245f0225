#pragma once

// Data-parallel inner loops of the batched CSD evaluators.
//
// Every kernel has a portable scalar reference and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (AArch64) variant. The variant
// is selected once at runtime; AIRCOH_SIMD=scalar|avx2|neon overrides.
// Variants agree with the reference to rounding, not bit-for-bit; a given
// backend is bit-reproducible across runs and thread counts.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace aircoh::simd {

enum class Backend { kScalar, kAvx2, kNeon };

struct KernelTable {
  /// sum_i a[i] b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// (sum_i a[i] re[i], sum_i a[i] im[i])
  void (*dot2)(const double* a, const double* re, const double* im, std::size_t n, double* out_re, double* out_im);
  /// out_re = Kre v, out_im = Kim v for row-major n x n blocks (row stride ld).
  void (*matvec2)(const double* kre, const double* kim, std::size_t n, std::size_t ld, const double* v,
                  double* out_re, double* out_im);
};

const KernelTable& kernels(Backend b);
const KernelTable& active();
Backend active_backend();
std::string_view backend_name(Backend b);

/// True when the backend is compiled in and the CPU supports it.
bool available(Backend b);

/// Force a backend (tests, CLI). Throws DomainError if unavailable.
void set_backend(Backend b);
/// Parse "scalar" / "avx2" / "neon" / "auto".
Backend parse_backend(std::string_view name);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

/// Real row vector a against a complex vector stored as separate re/im arrays.
inline std::complex<double> dot(std::span<const double> a, std::span<const double> re, std::span<const double> im) {
  double r = 0.0, i = 0.0;
  active().dot2(a.data(), re.data(), im.data(), a.size(), &r, &i);
  return {r, i};
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void dot2(const double* a, const double* re, const double* im, std::size_t n, double* out_re, double* out_im);
void matvec2(const double* kre, const double* kim, std::size_t n, std::size_t ld, const double* v, double* out_re,
             double* out_im);
}  // namespace scalar

}  // namespace aircoh::simd
