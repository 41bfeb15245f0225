#include <cmath>
#include <stdexcept>

#include "aircoh/coherence.hpp"
#include "aircoh/error.hpp"
#include "aircoh/gridlab.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aircoh;
using namespace aircoh::grid;

TEST_SUITE("gridlab") {
  TEST_CASE("uniform grid") {
    const GridSpec g(0, 1, 3);
    CHECK(g.at(0) == 0.0);
    CHECK(g.at(1) == 0.5);
    CHECK(g.at(2) == 1.0);
    CHECK_THROWS_AS(GridSpec(1, 1, 3), DomainError);
    CHECK_THROWS_AS(GridSpec(0, 1, 1), DomainError);
    const GridSpec awkward(-15, 15, 601);
    CHECK(awkward.at(600) == 15.0);
  }

  TEST_CASE("profiles") {
    const auto id = eval_profile([](double x) { return x; }, GridSpec(0, 1, 3));
    CHECK(id.values.size() == 3);
    CHECK(id.real(0) == 0.0);
    CHECK(id.real(1) == 0.5);
    CHECK(id.real(2) == 1.0);

    const auto ai = eval_profile(specfun::airy_ai, GridSpec(-2, 0, 3));
    CHECK(std::fabs(ai.real(0) - oracle::airy(-2)) < 1e-14);
    CHECK(std::fabs(ai.real(1) - oracle::airy(-1)) < 1e-14);
    CHECK(std::fabs(ai.real(2) - oracle::airy(0)) < 1e-14);

    const auto two = eval_profile([](double x) { return 3 * x; }, GridSpec(-1, 4, 2));
    CHECK(two.real(0) == -3.0);
    CHECK(two.real(1) == 12.0);
  }

  TEST_CASE("evaluator errors report the failing index") {
    auto f = [](double x) {
      if (x > 0.6) throw std::runtime_error("boom");
      return x;
    };
    for (unsigned threads : {1u, 3u}) {
      try {
        eval_profile(f, GridSpec(0, 1, 11), Parallel(threads));
        FAIL("expected GridEvalError");
      } catch (const GridEvalError& e) {
        CHECK(e.index() == 7);
        CHECK_FALSE(e.numerical());
      }
    }
    try {
      eval_profile([](double x) { return x > 0.5 ? std::nan("") : x; }, GridSpec(0, 1, 5));
      FAIL("expected GridEvalError");
    } catch (const GridEvalError& e) {
      CHECK(e.index() == 3);
    }
  }

  TEST_CASE("anti-diagonal slice") {
    const InfiniteBeam b{SpreadParams(0.5)};
    const auto t = antidiagonal_slice(b, GridSpec(-3, 3, 5), 2.0);
    CHECK(t.complex_valued);
    CHECK(t.values[2].imag() == 0.0);
    CHECK(std::fabs(t.values[2].real() - b.intensity(0.0, 2.0)) < 1e-7);

    const auto s = antidiagonal_slice(b, GridSpec(1.5, 2.5, 3), 0.0);
    CHECK(s.values[0].imag() == 0.0);

    const InfiniteBeam coh{SpreadParams(1e-3)};
    const auto c = antidiagonal_slice(coh, GridSpec(-1, 1, 3), 0.0);
    CHECK(std::fabs(c.values[2].real() - oracle::airy(1) * oracle::airy(-1)) < 1e-6);
  }

  TEST_CASE("density maps") {
    const auto ones = density_map([](double, double) { return 1.0; }, GridSpec(0, 1, 3), GridSpec(0, 1, 3));
    CHECK(ones.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) CHECK(ones.real(i) == 1.0);

    const InfiniteBeam b{SpreadParams(0.5)};
    const GridSpec g(1, 2, 2);
    const auto m = density_map(b, g, g, 0.0);
    CHECK(std::fabs(m.real(1) - m.real(2)) < 1e-15);

    const GridSpec big(-12, 12, 241);
    const double narrow = off_diagonal_mass(density_map(InfiniteBeam(SpreadParams(0.1)), big, big, 0.0), 2.0);
    const double wide = off_diagonal_mass(density_map(InfiniteBeam(SpreadParams(5.0)), big, big, 0.0), 2.0);
    MESSAGE("off-diagonal mass: sigma=0.1 " << narrow << ", sigma=5 " << wide);
    CHECK(wide / narrow < 0.3);
  }

  TEST_CASE("serial and parallel tables are identical") {
    const InfiniteBeam b{SpreadParams(0.5)};
    const GridSpec g(-10, 10, 101);
    const auto s1 = antidiagonal_slice(b, g, 3.0, Parallel(1));
    const auto s4 = antidiagonal_slice(b, g, 3.0, Parallel(4));
    const auto m1 = density_map(b, g, g, 3.0, Parallel(1));
    const auto m4 = density_map(b, g, g, 3.0, Parallel(4));
    CHECK(s1.values == s4.values);
    CHECK(m1.values == m4.values);
  }

  TEST_CASE("landmarks") {
    FieldTable tri = eval_profile([](double x) { return 1.0 - std::fabs(x); }, GridSpec(-1, 1, 21));
    const auto lm = landmark_metrics(tri);
    CHECK(std::fabs(lm.peak_x) < 1e-15);
    CHECK(std::fabs(lm.fwhm - 1.0) < 1e-12);

    const auto edge = eval_profile([](double x) { return x; }, GridSpec(0, 1, 11));
    CHECK_THROWS_AS(landmark_metrics(edge), LandmarkError);

    const InfiniteBeam coh{SpreadParams(1e-3)};
    const GridSpec g(-15, 15, 601);
    const auto l0 = landmark_metrics(intensity_profile(coh, g, 0.0));
    const auto l6 = landmark_metrics(intensity_profile(coh, g, 6.0));
    CHECK(std::fabs(l0.peak_x + 1.02) <= 0.02);
    CHECK(std::fabs(l0.fwhm - 1.64) <= 0.05);
    CHECK(std::fabs(l6.peak_x - 7.98) <= 0.02);
    CHECK(std::fabs(l6.fwhm - 1.64) <= 0.05);
  }

  TEST_CASE("peak shift equals z^2/4 for the infinite family") {
    const GridSpec g(-15, 25, 801);
    for (double s : {0.1, 0.5, 5.0}) {
      const InfiniteBeam b{SpreadParams(s)};
      const double p0 = landmark_metrics(intensity_profile(b, g, 0.0)).peak_x;
      for (double z : {2.0, 4.0, 6.0}) {
        const double pz = landmark_metrics(intensity_profile(b, g, z)).peak_x;
        CHECK(std::fabs(pz - p0 - 0.25 * z * z) <= g.step());
      }
    }
  }

  TEST_CASE("lobe contrast and relative rms") {
    const auto cosine = eval_profile([](double x) { return 2.0 + std::cos(x); }, GridSpec(-10, 0, 1001));
    const auto c = lobe_contrasts(cosine, 2);
    REQUIRE(c.size() == 2);
    for (double v : c) CHECK(std::fabs(v - 0.5) < 1e-4);
    const auto mono = eval_profile([](double x) { return std::exp(x); }, GridSpec(-3, 0, 7));
    CHECK(lobe_contrast(mono) == 0.0);
    CHECK(relative_rms(cosine, cosine) == 0.0);
  }
}
