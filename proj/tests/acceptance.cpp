// Acceptance run: one PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "aircoh/coherence.hpp"
#include "aircoh/finite_beams.hpp"
#include "aircoh/gridlab.hpp"
#include "cli_support.hpp"
#include "oracles.hpp"

using namespace aircoh;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void airy_oracle() {
  double worst = 0.0;
  for (int i = 0; i <= 150; ++i) {
    const double x = -10.0 + 15.0 * i / 150.0;
    worst = std::max(worst, std::fabs(specfun::airy_ai(x) - oracle::airy_quadrature(x)));
  }
  const double d0 = std::fabs(specfun::airy_ai(0.0) - oracle::airy_series(0.0));
  const double d1 = std::fabs(specfun::airy_ai(0.0) - 0.3550280539);
  report(1, "Airy oracle", worst <= 1e-8 && d0 <= 1e-9 && d1 <= 1e-9,
         fmt("max |Ai - contour quadrature| = %.2e on 151 points", worst) + fmt(", |Ai(0) - series| = %.2e", d0));
}

void shape_invariance() {
  double worst = 0.0;
  for (double sigma : {0.1, 0.5, 5.0}) {
    const SpreadParams p(sigma);
    const double a = p.alpha(), half = 8.0 * sigma;
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        const double x = -10.0 + i, xp = -10.0 + j;
        const double lib = std::abs(csd_infinite(p, x, xp, 6.0, 1e-11));
        const double ref = oracle::gk_pieces(
            [&](double l) {
              return std::sqrt(a / std::numbers::pi) * std::exp(-a * l * l) * oracle::airy(x - 9 - l) *
                     oracle::airy(xp - 9 - l);
            },
            -half, half, 1e-12);
        worst = std::max(worst, std::fabs(lib - std::fabs(ref)));
      }
    }
  }
  report(2, "shape invariance", worst <= 1e-6,
         fmt("max ||W(x,x',6)| - |W(x-9,x'-9,0)|| = %.2e over 21x21 on [-10,10]^2, sigma in {0.1,0.5,5}", worst));
}

void landmarks() {
  const InfiniteBeam coh{SpreadParams(1e-3)};
  const grid::GridSpec g(-15.0, 15.0, 601);
  const auto l0 = grid::landmark_metrics(grid::intensity_profile(coh, g, 0.0));
  const auto l6 = grid::landmark_metrics(grid::intensity_profile(coh, g, 6.0));
  const bool ok = l0.peak_x >= -1.06 && l0.peak_x <= -0.98 && l6.peak_x >= 7.94 && l6.peak_x <= 8.02 &&
                  std::fabs(l0.fwhm - 1.64) <= 0.05 && std::fabs(l6.fwhm - 1.64) <= 0.05;
  report(3, "self-acceleration landmarks", ok,
         fmt("z=0 peak %.4f fwhm %.4f", l0.peak_x, l0.fwhm) + fmt("; z=6 peak %.4f fwhm %.4f", l6.peak_x, l6.fwhm));
}

void type1_overlap() {
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.0, 0.5, 24.5}) {
      for (double z : {0.0, 2.0, 4.0, 8.0}) {
        const finite::TypeIParams p(a, b);
        const double closed = finite::overlap_closed_type1(p, z);
        worst = std::max(worst, std::fabs(finite::overlap_numeric(finite::type1_kernel(p), z) - closed) / closed);
      }
    }
  }
  const finite::TypeIParams p1(1.0, 0.5), p2(1.0, 24.5);
  const double e1 = finite::overlap_numeric(finite::type1_kernel(p1), finite::critical_distance_type1(p1));
  const double e2 = finite::overlap_numeric(finite::type1_kernel(p2), finite::critical_distance_type1(p2));
  const double target = std::exp(-1.0);
  const bool ok = worst <= 1e-6 && std::fabs(e1 - target) <= 1e-4 && std::fabs(e2 - target) <= 1e-4 &&
                  finite::critical_distance_type1(p1) == 4.0 && finite::critical_distance_type1(p2) == 20.0;
  report(4, "type-I overlap closed form", ok,
         fmt("max rel dev %.2e over 3x3x4 sweep", worst) + fmt("; eps(z=4) = %.6f, eps(z=20) = %.6f", e1, e2));
}

void type2_adjudication() {
  std::set<std::string> branches;
  bool single = true;
  double worst = 0.0;
  for (double a : {4.0, 100.0}) {
    for (double b : {1.0, 4.0, 5.0}) {
      for (double z : {2.0, 4.0, 8.0}) {
        const auto r = finite::overlap_report(finite::TypeIIParams(a, b), z);
        const auto br = finite::adjudicate(r);
        single = single && (br == finite::Branch::kPaper || br == finite::Branch::kDerived);
        branches.insert(finite::branch_name(br));
        const double winner = br == finite::Branch::kPaper ? r.eps_closed_paper : r.eps_closed_derived;
        worst = std::max(worst, std::fabs(r.eps_numeric - winner) / winner);
      }
    }
  }
  const finite::TypeIIParams h(100.0, 4.0);
  const auto r4 = finite::overlap_report(h, 4.0), r8 = finite::overlap_report(h, 8.0);
  const bool ok = single && branches.size() == 1 && worst <= 1e-6;
  std::string detail = "branch " + *branches.begin() + fmt(" at all 18 points, max rel dev %.2e", worst);
  detail += fmt("; (a,b)=(100,4): printed headline %.4f / %.4f", r4.eps_closed_paper, r8.eps_closed_paper);
  detail += fmt(" vs numeric %.4f / %.4f at z=4/8", r4.eps_numeric, r8.eps_numeric);
  report(5, "type-II adjudication", ok, detail);
}

void normalizations() {
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.0, 0.5, 24.5}) {
      const finite::TypeIParams p(a, b);
      worst = std::max(worst, std::fabs(oracle::gk_plane([&](double l, double lp) {
                                          return finite::kernel_type1(p, l, lp);
                                        }) - 1.0));
    }
  }
  double ratio_dev = 0.0;
  for (double a : {4.0, 100.0}) {
    for (double b : {1.0, 4.0, 5.0}) {
      const finite::TypeIIParams p(a, b);
      worst = std::max(worst, std::fabs(oracle::gk_plane([&](double l, double lp) {
                                          return finite::kernel_type2(p, l, lp);
                                        }) - 1.0));
      const double expected = p.normalization() / std::sqrt(std::numbers::pi / (a + 2 * b));
      for (double l : {-0.7, 0.0, 0.9}) {
        for (double lp : {-0.4, 0.5}) {
          const double c = b * (l + lp) / (a + 2 * b), w = 10.0 / std::sqrt(a + 2 * b);
          const double direct = oracle::gk(
              [&](double u) { return std::exp(-a * u * u - b * (l - u) * (l - u) - b * (lp - u) * (lp - u)); }, c - w,
              c + w, 1e-14);
          ratio_dev = std::max(ratio_dev, std::fabs(finite::kernel_type2(p, l, lp) / direct / expected - 1.0));
        }
      }
    }
  }
  report(6, "kernel normalizations", worst <= 1e-8 && ratio_dev <= 1e-8,
         fmt("max |mass - 1| = %.2e over 15 parameter sets", worst) + fmt("; constant-ratio dev %.2e", ratio_dev));
}

void gauge() {
  const auto base = std::make_shared<InfiniteBeam>(SpreadParams(0.5), 1e-11);
  const GaugeParams g(0.05, 1.0);
  const GaugeBeam wf(base, g);
  double inv = 0.0, gam = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double x = -5.0 + i;
    const double ref = g.correlation(0.0) + oracle::gk_pieces(
                                                [&](double l) {
                                                  const double ai = oracle::airy(x - 9.0 - l);
                                                  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-4.0 * l * l) * ai * ai;
                                                },
                                                -4.0, 4.0, 1e-12);
    inv = std::max(inv, std::fabs(wf.intensity(x, 6.0) - ref));
    const double g6 = std::abs(degree_of_coherence(wf, x, -x, 6.0));
    const double g0 = std::abs(degree_of_coherence(wf, x - 9.0, -x - 9.0, 0.0));
    gam = std::max(gam, std::fabs(g6 - g0));
  }
  report(7, "gauge family", inv <= 1e-8 && gam > 1e-4,
         fmt("max |I_F(x,6) - I_F(x-9,0) oracle| = %.2e; max ||gamma_F| difference| = %.3e", inv, gam));
}

void flow() {
  const SpreadParams p(0.5);
  const double h = 1e-3;
  auto fd_jx = [&](double x, double z) {
    auto w = [&](double a, double b) { return csd_infinite(p, a, b, z, 1e-13); };
    const Complex dx = (w(x + h, x) - w(x - h, x)) / (2 * h);
    const Complex dxp = (w(x, x + h) - w(x, x - h)) / (2 * h);
    return (Complex(0, 1) * (dx - dxp)).real();
  };
  double worst = 0.0, zero = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double x = 5.0 + i;
    worst = std::max(worst, std::fabs(fd_jx(x, 6.0) - 6.0 * intensity_infinite(p, x - 9.0, 0.0, 1e-12)));
    zero = std::max({zero, std::fabs(flow_infinite(p, x - 9.0, 0.0).jx), std::fabs(fd_jx(x - 9.0, 0.0))});
  }
  report(8, "energy flow", worst <= 1e-4 && zero <= 1e-10,
         fmt("max |jx_fd - z I(x - z^2/4)| = %.2e at 9 points; max |jx| at z=0 = %.1e", worst, zero));
}

void power() {
  const auto beam = finite::type2_beam(finite::TypeIIParams(4.0, 4.0));
  const double p0 = finite::total_power(*beam, 0.0), p4 = finite::total_power(*beam, 4.0);
  const double rel = std::fabs(p4 / p0 - 1.0);
  report(9, "power conservation", rel <= 1e-3, fmt("P(0) = %.8f", p0) + fmt(", P(4) = %.8f", p4) + fmt(", rel %.2e", rel));
}

void determinism() {
  bool ok = true;
  std::string detail;
  for (const std::string id : {"fig1", "fig3"}) {
    std::vector<std::vector<std::pair<std::string, std::string>>> runs;
    for (const std::string threads : {"1", "1", "4"}) {
      const auto dir = clitest::scratch("accept_" + id);
      const auto r = clitest::run({"figure", id, "--outdir", dir.string(), "--threads", threads});
      if (r.code != 0) {
        ok = false;
        detail += id + " exit " + std::to_string(r.code) + "; ";
      }
      runs.push_back(clitest::snapshot(dir, ".csv"));
      std::filesystem::remove_all(dir);
    }
    const bool same = !runs[0].empty() && runs[0] == runs[1] && runs[0] == runs[2];
    ok = ok && same;
    detail += id + ": " + std::to_string(runs[0].size()) + " CSVs " + (same ? "identical" : "DIFFER") +
              " (threads 1, 1, 4); ";
  }
  report(10, "determinism", ok, detail.substr(0, detail.size() - 2));
}

template <class F>
void timed(F f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    f();
  } catch (const std::exception& e) {
    std::printf("FAIL    exception: %s\n", e.what());
    ++failures;
  }
  std::printf("     (%.1f s)\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace

int main() {
  timed(airy_oracle);
  timed(shape_invariance);
  timed(landmarks);
  timed(type1_overlap);
  timed(type2_adjudication);
  timed(normalizations);
  timed(gauge);
  timed(flow);
  timed(power);
  timed(determinism);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
