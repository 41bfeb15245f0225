#include <atomic>
#include <cstdlib>
#include <string>

#include "aircoh/error.hpp"
#include "aircoh/simd.hpp"
#include "simd_variants.hpp"

namespace aircoh::simd {
namespace {

constexpr KernelTable kScalarTable{&scalar::dot, &scalar::dot2, &scalar::matvec2};
#if defined(__x86_64__) && defined(AIRCOH_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::dot, &avx2::dot2, &avx2::matvec2};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeonTable{&neon::dot, &neon::dot2, &neon::matvec2};
#endif

Backend best_available() {
  if (available(Backend::kAvx2)) return Backend::kAvx2;
  if (available(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

Backend initial_backend() {
  const char* env = std::getenv("AIRCOH_SIMD");
  if (env != nullptr && *env != '\0') {
    const Backend b = parse_backend(env);
    if (available(b)) return b;
  }
  return best_available();
}

std::atomic<Backend>& selected() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(__x86_64__) && defined(AIRCOH_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Backend b) {
  if (!available(b)) throw DomainError("simd: backend " + std::string(backend_name(b)) + " not available");
  switch (b) {
#if defined(__x86_64__) && defined(AIRCOH_HAVE_AVX2)
    case Backend::kAvx2:
      return kAvx2Table;
#endif
#if defined(__aarch64__)
    case Backend::kNeon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

const KernelTable& active() { return kernels(selected().load(std::memory_order_relaxed)); }

Backend active_backend() { return selected().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!available(b)) throw DomainError("simd: backend " + std::string(backend_name(b)) + " not available");
  selected().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") return Backend::kAvx2;
  if (name == "neon") return Backend::kNeon;
  if (name == "auto") return best_available();
  throw DomainError("simd: unknown backend '" + std::string(name) + "'");
}

}  // namespace aircoh::simd
