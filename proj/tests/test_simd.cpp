#include <cmath>
#include <random>
#include <vector>

#include "aircoh/coherence.hpp"
#include "aircoh/error.hpp"
#include "aircoh/finite_beams.hpp"
#include "aircoh/simd.hpp"
#include "doctest.h"

using namespace aircoh;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<simd::Backend> backends() {
  std::vector<simd::Backend> out;
  for (auto b : {simd::Backend::kScalar, simd::Backend::kAvx2, simd::Backend::kNeon}) {
    if (simd::available(b)) out.push_back(b);
  }
  return out;
}

struct RestoreBackend {
  simd::Backend saved = simd::active_backend();
  ~RestoreBackend() { simd::set_backend(saved); }
};

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("kernels agree with a long double reference") {
    std::mt19937_64 rng(12345);
    for (auto b : backends()) {
      const auto& k = simd::kernels(b);
      CAPTURE(simd::backend_name(b));
      for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 33u, 100u, 1001u}) {
        CAPTURE(n);
        const auto a = random_vector(n, rng), re = random_vector(n, rng), im = random_vector(n, rng);
        long double rd = 0, rr = 0, ri = 0, scale = 0;
        for (std::size_t i = 0; i < n; ++i) {
          rd += static_cast<long double>(a[i]) * re[i];
          rr += static_cast<long double>(a[i]) * re[i];
          ri += static_cast<long double>(a[i]) * im[i];
          scale += std::fabs(a[i]) + std::fabs(re[i]) + std::fabs(im[i]);
        }
        const double tol = 1e-15 * (static_cast<double>(scale) + 1.0);
        CHECK(std::fabs(k.dot(a.data(), re.data(), n) - static_cast<double>(rd)) <= tol);
        double outr = 0, outi = 0;
        k.dot2(a.data(), re.data(), im.data(), n, &outr, &outi);
        CHECK(std::fabs(outr - static_cast<double>(rr)) <= tol);
        CHECK(std::fabs(outi - static_cast<double>(ri)) <= tol);

        const std::size_t ld = n + 3;
        const auto kre = random_vector(n * ld, rng), kim = random_vector(n * ld, rng);
        std::vector<double> yr(n), yi(n);
        k.matvec2(kre.data(), kim.data(), n, ld, a.data(), yr.data(), yi.data());
        for (std::size_t i = 0; i < n; ++i) {
          long double sr = 0, si = 0;
          for (std::size_t j = 0; j < n; ++j) {
            sr += static_cast<long double>(kre[i * ld + j]) * a[j];
            si += static_cast<long double>(kim[i * ld + j]) * a[j];
          }
          CHECK(std::fabs(yr[i] - static_cast<double>(sr)) <= 1e-15 * (2.0 * n + 1.0));
          CHECK(std::fabs(yi[i] - static_cast<double>(si)) <= 1e-15 * (2.0 * n + 1.0));
        }
      }
    }
  }

  TEST_CASE("each backend is bit-reproducible") {
    std::mt19937_64 rng(7);
    const auto a = random_vector(777, rng), b = random_vector(777, rng);
    for (auto be : backends()) {
      const auto& k = simd::kernels(be);
      CHECK(k.dot(a.data(), b.data(), a.size()) == k.dot(a.data(), b.data(), a.size()));
    }
  }

  TEST_CASE("backend names and selection") {
    RestoreBackend restore;
    CHECK(simd::parse_backend("scalar") == simd::Backend::kScalar);
    CHECK(simd::parse_backend("avx2") == simd::Backend::kAvx2);
    CHECK(simd::parse_backend("neon") == simd::Backend::kNeon);
    CHECK_THROWS_AS(simd::parse_backend("sse9"), DomainError);
    simd::set_backend(simd::Backend::kScalar);
    CHECK(simd::active_backend() == simd::Backend::kScalar);
    for (auto b : {simd::Backend::kAvx2, simd::Backend::kNeon}) {
      if (!simd::available(b)) CHECK_THROWS_AS(simd::set_backend(b), DomainError);
    }
  }

  TEST_CASE("batched CSD maps agree across backends") {
    RestoreBackend restore;
    const finite::TypeIParams p(1.0, 0.5);
    const auto beam = finite::type1_beam(p);
    const InfiniteBeam inf{SpreadParams(0.5)};
    std::vector<double> xs, xps;
    for (int i = 0; i < 13; ++i) xs.push_back(-6.0 + i);
    for (int i = 0; i < 9; ++i) xps.push_back(-4.0 + 1.1 * i);
    const quad::Interval span(-6.0, 6.0);

    simd::set_backend(simd::Backend::kScalar);
    const auto ref_k = beam->batch(3.0, span, 1e-8)->amplitude_map(xs, xps, Parallel{});
    const auto ref_i = inf.batch(3.0, span, 1e-8)->amplitude_map(xs, xps, Parallel{});
    for (auto b : backends()) {
      simd::set_backend(b);
      const auto got_k = beam->batch(3.0, span, 1e-8)->amplitude_map(xs, xps, Parallel{});
      const auto got_i = inf.batch(3.0, span, 1e-8)->amplitude_map(xs, xps, Parallel{});
      for (std::size_t i = 0; i < ref_k.size(); ++i) {
        CHECK(std::abs(got_k[i] - ref_k[i]) <= 1e-12);
        CHECK(std::abs(got_i[i] - ref_i[i]) <= 1e-12);
      }
    }
  }
}
