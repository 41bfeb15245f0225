#include "aircoh/finite_beams.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "aircoh/error.hpp"
#include "windowing.hpp"

namespace aircoh::finite {
namespace {

bool in_open_range(double v) { return v > 1e-6 && v < 1e6; }

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(b), 1e-300);
}

}  // namespace

TypeIParams::TypeIParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!in_open_range(alpha)) throw DomainError("TypeIParams: alpha must lie in (1e-6, 1e6)");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("TypeIParams: beta must be finite and >= 0");
}

double TypeIParams::normalization() const { return std::sqrt(alpha_ * (alpha_ + 2.0 * beta_)) / std::numbers::pi; }

TypeIIParams::TypeIIParams(double a, double b) : a_(a), b_(b) {
  if (!in_open_range(a) || !in_open_range(b)) throw DomainError("TypeIIParams: a and b must lie in (1e-6, 1e6)");
}

double TypeIIParams::normalization() const { return b_ / std::numbers::pi * std::sqrt(a_ / (a_ + 2.0 * b_)); }

PrimedParams map_type2_params(const TypeIIParams& p) {
  const double d = p.a() + 2.0 * p.b();
  return {p.a() * p.b() / d, p.b() * p.b() / d};
}

namespace {

double bivariate_gaussian(double alpha, double beta, double l, double lp) {
  const double u = l - lp;
  return std::exp(-alpha * (l * l + lp * lp) - beta * u * u);
}

}  // namespace

double kernel_type1(const TypeIParams& p, double lambda, double lambdap) {
  return p.normalization() * bivariate_gaussian(p.alpha(), p.beta(), lambda, lambdap);
}

double kernel_type2(const TypeIIParams& p, double lambda, double lambdap) {
  const PrimedParams q = map_type2_params(p);
  return p.normalization() * bivariate_gaussian(q.alpha_prime, q.beta_prime, lambda, lambdap);
}

double kernel_type2_components(const TypeIIParams& p, double lambda, double lambdap, double rel_tol) {
  const double a = p.a(), b = p.b();
  auto f = [&](double u) {
    const double d1 = lambda - u, d2 = lambdap - u;
    return std::exp(-a * u * u) * std::exp(-b * d1 * d1) * std::exp(-b * d2 * d2);
  };
  const double centre = b * (lambda + lambdap) / (a + 2.0 * b);
  const double half = kWindowSigmas / std::sqrt(a + 2.0 * b);
  quad::QuadOptions opt;
  opt.initial_panels = 4;
  opt.abs_floor = 1e-300;
  return quad::integrate_1d(f, quad::Interval(centre - half, centre + half), rel_tol, opt).value;
}

DisplacementKernel type1_kernel(const TypeIParams& p) {
  return DisplacementKernel([p](double l, double lp) { return Complex(kernel_type1(p, l, lp)); },
                            {p.alpha(), p.beta()}, "type1");
}

DisplacementKernel type2_kernel(const TypeIIParams& p) {
  const PrimedParams q = map_type2_params(p);
  return DisplacementKernel([p](double l, double lp) { return Complex(kernel_type2(p, l, lp)); },
                            {q.alpha_prime, q.beta_prime}, "type2");
}

std::shared_ptr<KernelBeam> type1_beam(const TypeIParams& p, double rel_tol) {
  return std::make_shared<KernelBeam>(type1_kernel(p), "type1",
                                      std::vector<std::pair<std::string, double>>{{"alpha", p.alpha()},
                                                                                  {"beta", p.beta()}},
                                      rel_tol);
}

std::shared_ptr<KernelBeam> type2_beam(const TypeIIParams& p, double rel_tol) {
  const PrimedParams q = map_type2_params(p);
  return std::make_shared<KernelBeam>(type2_kernel(p), "type2",
                                      std::vector<std::pair<std::string, double>>{{"a", p.a()},
                                                                                  {"b", p.b()},
                                                                                  {"alpha_prime", q.alpha_prime},
                                                                                  {"beta_prime", q.beta_prime}},
                                      rel_tol);
}

Complex csd_type1(const TypeIParams& p, double x, double xp, double z, double rel_tol) {
  return csd_from_kernel(type1_kernel(p), x, xp, z, rel_tol);
}

Complex csd_type2(const TypeIIParams& p, double x, double xp, double z, double rel_tol) {
  return csd_from_kernel(type2_kernel(p), x, xp, z, rel_tol);
}

double total_power(const CsdModel& beam, double z, const quad::Interval& x_window, double rel_tol) {
  const auto batch = beam.batch(z, x_window, rel_tol);
  auto f = [&](double x) { return batch->amplitude(x, x).real(); };
  quad::QuadOptions opt;
  opt.initial_panels = detail::initial_panels(x_window);
  return quad::integrate_1d(f, x_window, rel_tol, opt).value;
}

quad::Interval power_window(const KernelEnvelope& env, double z) {
  // C bounded by the envelope gives a spectral density below
  // exp(-k^2 / (2 (alpha + 2 beta))); the ray of wavenumber k sits at
  // x = l - k^2 + k z, so the window covers |k| <= 7 spectral widths.
  const double kmax = 7.0 * std::sqrt(env.alpha + 2.0 * env.beta);
  const double spread = 0.5 * env.outer_window().width();
  return {-(kmax * kmax + kmax * std::fabs(z)) - spread - 10.0, 0.25 * z * z + spread + 20.0};
}

double total_power(const KernelBeam& beam, double z, double rel_tol) {
  return total_power(static_cast<const CsdModel&>(beam), z, power_window(beam.kernel().envelope(), z), rel_tol);
}

double overlap_numeric(const DisplacementKernel& k, double z, double rel_tol) {
  if (!std::isfinite(z)) throw DomainError("overlap_numeric: non-finite z");
  // Integrate over u = l - l' (outer) and s = l + l' (inner): the phase depends
  // on u only, so every inner integral is positive. |C|^2 is bounded by
  // exp(-A (s^2 + u^2) / 2 - B u^2) with (A, B) twice the kernel envelope.
  const double A = 2.0 * k.envelope().alpha, B = 2.0 * k.envelope().beta;
  const quad::Interval outer = quad::gaussian_window(0.5 * A + B, kWindowSigmas);
  const quad::Interval inner = quad::gaussian_window(0.5 * A, kWindowSigmas);
  quad::QuadOptions opt;
  opt.initial_panels = 4;
  opt.abs_floor = 1e-300;
  // g(u) = int |C|^2 ds has no cancellation; the oscillation is left to the outer integral.
  auto g = [&](double u) {
    auto f = [&](double s) { return std::norm(k(0.5 * (s + u), 0.5 * (s - u))); };
    return quad::integrate_1d(f, inner, 1e-13, opt).value;
  };
  const double den = quad::integrate_1d(g, outer, rel_tol, opt).value;
  const Complex num =
      quad::integrate_1d([&](double u) { return g(u) * std::polar(1.0, 0.5 * u * z); }, outer, rel_tol, opt).value;
  return std::norm(num / den);
}

double overlap_closed_type1(const TypeIParams& p, double z) {
  return std::exp(-z * z / (8.0 * p.alpha() + 16.0 * p.beta()));
}

Type2OverlapForms overlap_closed_type2(const TypeIIParams& p, double z) {
  const PrimedParams q = map_type2_params(p);
  return {std::exp(-z * z / (16.0 * p.b())), std::exp(-z * z / (8.0 * (q.alpha_prime + 2.0 * q.beta_prime)))};
}

double critical_distance_type1(const TypeIParams& p) { return std::sqrt(8.0 * (p.alpha() + 2.0 * p.beta())); }

double critical_distance_type2(const TypeIIParams& p) { return 4.0 * std::sqrt(p.b()); }

double critical_distance_type2_derived(const TypeIIParams& p) { return std::sqrt(8.0 * p.b()); }

OverlapReport overlap_report(const TypeIParams& p, double z) {
  OverlapReport r{};
  r.z = z;
  r.eps_numeric = overlap_numeric(type1_kernel(p), z);
  r.eps_closed_paper = overlap_closed_type1(p, z);
  r.eps_closed_derived = r.eps_closed_paper;
  r.discrepancy_flag = !close_rel(r.eps_numeric, r.eps_closed_paper, kAdjudicationTol);
  return r;
}

OverlapReport overlap_report(const TypeIIParams& p, double z) {
  OverlapReport r{};
  r.z = z;
  r.eps_numeric = overlap_numeric(type2_kernel(p), z);
  const Type2OverlapForms forms = overlap_closed_type2(p, z);
  r.eps_closed_paper = forms.paper_value;
  r.eps_closed_derived = forms.derived_value;
  r.discrepancy_flag = !close_rel(r.eps_numeric, r.eps_closed_paper, kAdjudicationTol);
  return r;
}

Branch adjudicate(const OverlapReport& r) {
  const bool paper = close_rel(r.eps_numeric, r.eps_closed_paper, kAdjudicationTol);
  const bool derived = close_rel(r.eps_numeric, r.eps_closed_derived, kAdjudicationTol);
  if (paper && derived) return Branch::kBoth;
  if (paper) return Branch::kPaper;
  if (derived) return Branch::kDerived;
  return Branch::kNeither;
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::kPaper:
      return "printed";
    case Branch::kDerived:
      return "derived";
    case Branch::kBoth:
      return "both";
    case Branch::kNeither:
      return "neither";
  }
  return "neither";
}

}  // namespace aircoh::finite
