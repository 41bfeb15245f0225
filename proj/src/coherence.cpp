#include "aircoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "aircoh/error.hpp"
#include "windowing.hpp"

namespace aircoh {

using specfun::airy_ai;
using specfun::ballistic_shift;

namespace {

void require_finite(const char* who, std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError(std::string(who) + ": non-finite coordinate");
  }
}

}  // namespace

SpreadParams::SpreadParams(double sigma) : sigma_(sigma) {
  if (!(sigma > 1e-6 && sigma < 1e6)) throw DomainError("SpreadParams: sigma must lie in (1e-6, 1e6)");
}

double SpreadParams::density(double lambda) const {
  const double a = alpha();
  return std::sqrt(a / std::numbers::pi) * std::exp(-a * lambda * lambda);
}

quad::Interval KernelEnvelope::outer_window(double n_sigmas) const {
  // Integrating the bound over l' leaves exp(-alpha (alpha + 2 beta) / (alpha + beta) l^2).
  const double marginal = alpha * (alpha + 2.0 * beta) / (alpha + beta);
  return quad::gaussian_window(marginal, n_sigmas);
}

quad::Interval KernelEnvelope::inner_window(double lambda, double n_sigmas) const {
  const double centre = beta * lambda / (alpha + beta);
  const double half = n_sigmas / std::sqrt(alpha + beta);
  return {centre - half, centre + half};
}

DisplacementKernel::DisplacementKernel(Evaluator c, KernelEnvelope envelope, std::string label)
    : eval_(std::move(c)), envelope_(envelope), label_(std::move(label)) {
  if (!eval_) throw DomainError("DisplacementKernel: empty evaluator");
  if (!(envelope_.alpha > 0.0) || !(envelope_.beta >= 0.0)) {
    throw DomainError("DisplacementKernel: envelope needs alpha > 0, beta >= 0");
  }
}

DisplacementKernel DisplacementKernel::scaled(double factor) const {
  Evaluator inner = eval_;
  return DisplacementKernel([inner, factor](double l, double lp) { return factor * inner(l, lp); }, envelope_,
                            label_);
}

DisplacementKernel narrow_gaussian_kernel(double width) {
  if (!(width > 0.0)) throw DomainError("narrow_gaussian_kernel: width must be > 0");
  const double a = 1.0 / (width * width);
  const double norm = a / std::numbers::pi;
  return DisplacementKernel([a, norm](double l, double lp) { return Complex(norm * std::exp(-a * (l * l + lp * lp))); },
                            {a, 0.0}, "narrow-gaussian");
}

GaugeParams::GaugeParams(double f_amp, double f_width) : f_amp_(f_amp), f_width_(f_width) {
  if (!(f_amp >= 0.0) || !std::isfinite(f_amp)) throw DomainError("GaugeParams: f_amp must be >= 0");
  if (!(f_width > 0.0) || !std::isfinite(f_width)) throw DomainError("GaugeParams: f_width must be > 0");
}

double GaugeParams::spectrum(double eta) const { return f_amp_ * std::exp(-eta * eta / (f_width_ * f_width_)); }

double GaugeParams::correlation(double d) const {
  return f_amp_ * f_width_ * std::sqrt(std::numbers::pi) * std::exp(-d * d * f_width_ * f_width_ / 4.0);
}

// ---------------------------------------------------------------------------

double amplitude_infinite(const SpreadParams& p, double x, double xp, double z, double rel_tol) {
  require_finite("amplitude_infinite", {x, xp, z});
  const double s = ballistic_shift(z);
  auto f = [&](double l) { return p.density(l) * airy_ai(x - l - s) * airy_ai(xp - l - s); };
  return detail::windowed_integral(f, quad::gaussian_window(p.alpha(), kWindowSigmas), rel_tol).value;
}

Complex csd_infinite(const SpreadParams& p, double x, double xp, double z, double rel_tol) {
  return csd_phase(x, xp, z) * amplitude_infinite(p, x, xp, z, rel_tol);
}

double intensity_infinite(const SpreadParams& p, double x, double z, double rel_tol) {
  return amplitude_infinite(p, x, x, z, rel_tol);
}

Complex amplitude_from_kernel(const DisplacementKernel& k, double x, double xp, double z, double rel_tol) {
  require_finite("amplitude_from_kernel", {x, xp, z});
  const double s = ballistic_shift(z);
  const KernelEnvelope& env = k.envelope();

  double cached_l = std::numeric_limits<double>::quiet_NaN();
  double cached_ai = 0.0;
  auto f = [&](double l, double lp) -> Complex {
    if (l != cached_l) {
      cached_l = l;
      cached_ai = airy_ai(x - l - s);
    }
    return k(l, lp) * std::polar(1.0, 0.5 * (l - lp) * z) * (cached_ai * airy_ai(xp - lp - s));
  };
  const quad::Interval outer = env.outer_window();
  quad::QuadOptions outer_opt;
  outer_opt.initial_panels = detail::initial_panels(outer);
  quad::QuadOptions inner_opt;
  inner_opt.initial_panels = detail::initial_panels(env.inner_window(0.0));
  auto inner = [&env](double l) { return env.inner_window(l); };
  return quad::integrate_2d(f, outer, inner, rel_tol, outer_opt, inner_opt).value;
}

Complex csd_from_kernel(const DisplacementKernel& k, double x, double xp, double z, double rel_tol) {
  return csd_phase(x, xp, z) * amplitude_from_kernel(k, x, xp, z, rel_tol);
}

Complex degree_of_coherence(const CsdModel& w, double x, double xp, double z) {
  const double ix = w.intensity(x, z);
  const double ixp = (xp == x) ? ix : w.intensity(xp, z);
  constexpr double tiny = std::numeric_limits<double>::min();
  if (!(ix > tiny) || !(ixp > tiny)) {
    throw UndefinedValueError("degree_of_coherence: intensity vanishes at one of the points");
  }
  if (xp == x) return {1.0, 0.0};
  return w.csd(x, xp, z) / std::sqrt(ix * ixp);
}

Flow flow_infinite(const SpreadParams& p, double x, double z, double rel_tol) {
  const double i0 = intensity_infinite(p, x - ballistic_shift(z), 0.0, rel_tol);
  return {z * i0, 2.0 * i0};
}

Complex synth_superposition(const CoefficientProfile& c, double x, double z, double rel_tol) {
  require_finite("synth_superposition", {x, z});
  if (!c.c) throw DomainError("synth_superposition: empty profile");
  auto f = [&](double l) { return c.c(l) * specfun::airy_field(x - l, z); };
  return detail::windowed_integral(f, quad::gaussian_window(c.envelope_alpha, kWindowSigmas), rel_tol).value;
}

Complex recover_coefficients(const std::function<Complex(double)>& u0, double lambda, const quad::Interval& x_window,
                             double rel_tol) {
  require_finite("recover_coefficients", {lambda});
  if (!u0) throw DomainError("recover_coefficients: empty field");
  auto f = [&](double x) { return u0(x) * airy_ai(x - lambda); };
  quad::QuadOptions opt;
  opt.initial_panels = detail::initial_panels(x_window);
  return quad::integrate_1d(f, x_window, rel_tol, opt).value;
}

Complex csd_gauge_extend(const CsdModel& w, const GaugeParams& g, double x, double xp, double z) {
  return w.csd(x, xp, z) + g.correlation(xp - x);
}

// ---------------------------------------------------------------------------

InfiniteBeam::InfiniteBeam(SpreadParams p, double rel_tol) : p_(p), rel_tol_(rel_tol) {}

Complex InfiniteBeam::amplitude(double x, double xp, double z) const {
  return amplitude_infinite(p_, x, xp, z, rel_tol_);
}

std::vector<std::pair<std::string, double>> InfiniteBeam::parameters() const {
  return {{"sigma", p_.sigma()}, {"alpha", p_.alpha()}};
}

KernelBeam::KernelBeam(DisplacementKernel k, std::string family, std::vector<std::pair<std::string, double>> params,
                       double rel_tol)
    : k_(std::move(k)), family_(std::move(family)), params_(std::move(params)), rel_tol_(rel_tol) {}

Complex KernelBeam::amplitude(double x, double xp, double z) const {
  return amplitude_from_kernel(k_, x, xp, z, rel_tol_);
}

GaugeBeam::GaugeBeam(std::shared_ptr<const CsdModel> base, GaugeParams g) : base_(std::move(base)), g_(g) {
  if (!base_) throw DomainError("GaugeBeam: null base model");
}

Complex GaugeBeam::amplitude(double x, double xp, double z) const {
  return base_->amplitude(x, xp, z) + std::conj(csd_phase(x, xp, z)) * g_.correlation(xp - x);
}

double GaugeBeam::intensity(double x, double z) const { return base_->intensity(x, z) + g_.correlation(0.0); }

std::vector<std::pair<std::string, double>> GaugeBeam::parameters() const {
  auto out = base_->parameters();
  out.emplace_back("f_amp", g_.f_amp());
  out.emplace_back("f_width", g_.f_width());
  return out;
}

}  // namespace aircoh
