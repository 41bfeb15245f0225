#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "aircoh/coherence.hpp"
#include "aircoh/error.hpp"
#include "aircoh/simd.hpp"

namespace aircoh {

using specfun::airy_ai;
using specfun::ballistic_shift;

std::vector<Complex> CsdBatch::amplitude_pairs(std::span<const double> x, std::span<const double> xp,
                                               const Parallel& par) const {
  if (x.size() != xp.size()) throw DomainError("amplitude_pairs: coordinate spans differ in length");
  std::vector<Complex> out(x.size());
  par.for_each_index(x.size(), [&](std::size_t k) { out[k] = amplitude(x[k], xp[k]); });
  return out;
}

std::vector<Complex> CsdBatch::amplitude_map(std::span<const double> xs, std::span<const double> xps,
                                             const Parallel& par) const {
  std::vector<Complex> out(xs.size() * xps.size());
  par.for_each_index(out.size(), [&](std::size_t k) { out[k] = amplitude(xs[k / xps.size()], xps[k % xps.size()]); });
  return out;
}

namespace {

constexpr std::size_t kMaxPanelsInfinite = 4096;
constexpr std::size_t kMaxPanelsKernel = 128;

std::vector<std::pair<double, double>> probe_pairs(const quad::Interval& span) {
  const double pts[] = {span.lo(), span.lo() + 0.25 * span.width(), span.mid(), span.hi() - 0.25 * span.width(),
                        span.hi()};
  std::vector<std::pair<double, double>> out;
  for (double a : pts) {
    for (double b : pts) out.emplace_back(a, b);
  }
  return out;
}

/// Doubles the panel count until every probe amplitude changes by less than
/// rel_tol times the largest probe magnitude; returns the finer batch.
template <class Make>
std::unique_ptr<CsdBatch> refine(Make make, std::size_t panels, std::size_t max_panels, const quad::Interval& span,
                                 double rel_tol, const char* who) {
  const auto probes = probe_pairs(span);
  auto sample = [&](const CsdBatch& b) {
    std::vector<Complex> v;
    v.reserve(probes.size());
    for (const auto& [x, xp] : probes) v.push_back(b.amplitude(x, xp));
    return v;
  };
  std::unique_ptr<CsdBatch> prev = make(panels);
  std::vector<Complex> prev_v = sample(*prev);
  double diff = 0.0, scale = 0.0;
  while (panels * 2 <= max_panels) {
    panels *= 2;
    std::unique_ptr<CsdBatch> next = make(panels);
    std::vector<Complex> next_v = sample(*next);
    diff = 0.0;
    scale = 0.0;
    for (std::size_t i = 0; i < next_v.size(); ++i) {
      diff = std::max(diff, std::abs(next_v[i] - prev_v[i]));
      scale = std::max(scale, std::abs(next_v[i]));
    }
    if (diff <= std::max(rel_tol * scale, 1e-14)) return next;
    prev = std::move(next);
    prev_v = std::move(next_v);
  }
  throw ConvergenceError(std::string(who) + ": node set did not converge within the panel budget",
                         prev_v.empty() ? Complex{} : prev_v.front(), diff);
}

std::size_t starting_panels(const quad::Interval& w) {
  return static_cast<std::size_t>(std::clamp(std::ceil(0.5 * w.width()), 2.0, 64.0));
}

class InfiniteBatch final : public CsdBatch {
 public:
  InfiniteBatch(const SpreadParams& p, double z, const quad::NodeSet& ns)
      : shift_(ballistic_shift(z)), nodes_(ns.nodes), scale_(ns.size()) {
    for (std::size_t i = 0; i < ns.size(); ++i) scale_[i] = std::sqrt(ns.weights[i] * p.density(ns.nodes[i]));
  }

  Complex amplitude(double x, double xp) const override {
    const auto a = row(x);
    const auto b = row(xp);
    return simd::dot(a, b);
  }

  std::vector<Complex> amplitude_pairs(std::span<const double> x, std::span<const double> xp,
                                       const Parallel& par) const override {
    if (x.size() != xp.size()) throw DomainError("amplitude_pairs: coordinate spans differ in length");
    std::vector<Complex> out(x.size());
    par.for_each_index(x.size(), [&](std::size_t k) { out[k] = amplitude(x[k], xp[k]); });
    return out;
  }

  std::vector<Complex> amplitude_map(std::span<const double> xs, std::span<const double> xps,
                                     const Parallel& par) const override {
    const std::size_t n = nodes_.size();
    std::vector<double> left(xs.size() * n), right(xps.size() * n);
    par.for_each_index(xs.size(), [&](std::size_t i) { fill_row(xs[i], &left[i * n]); });
    par.for_each_index(xps.size(), [&](std::size_t j) { fill_row(xps[j], &right[j * n]); });
    std::vector<Complex> out(xs.size() * xps.size());
    par.for_each_index(xs.size(), [&](std::size_t i) {
      const auto& k = simd::active();
      for (std::size_t j = 0; j < xps.size(); ++j) out[i * xps.size() + j] = k.dot(&left[i * n], &right[j * n], n);
    });
    return out;
  }

 private:
  std::vector<double> row(double x) const {
    std::vector<double> r(nodes_.size());
    fill_row(x, r.data());
    return r;
  }

  void fill_row(double x, double* r) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) r[i] = scale_[i] * airy_ai(x - nodes_[i] - shift_);
  }

  double shift_;
  std::vector<double> nodes_;
  std::vector<double> scale_;  // sqrt(w_i P(l_i))
};

class KernelBatch final : public CsdBatch {
 public:
  KernelBatch(const DisplacementKernel& k, double z, const quad::NodeSet& ns)
      : shift_(ballistic_shift(z)), nodes_(ns.nodes), n_(ns.size()), kre_(n_ * n_), kim_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Complex c = k(nodes_[i], nodes_[j]) * std::polar(1.0, 0.5 * (nodes_[i] - nodes_[j]) * z) *
                          (ns.weights[i] * ns.weights[j]);
        kre_[i * n_ + j] = c.real();
        kim_[i * n_ + j] = c.imag();
      }
    }
  }

  Complex amplitude(double x, double xp) const override {
    std::vector<double> a(n_), b(n_), tre(n_), tim(n_);
    fill_row(x, a.data());
    fill_row(xp, b.data());
    return contract(a.data(), b.data(), tre.data(), tim.data());
  }

  std::vector<Complex> amplitude_pairs(std::span<const double> x, std::span<const double> xp,
                                       const Parallel& par) const override {
    if (x.size() != xp.size()) throw DomainError("amplitude_pairs: coordinate spans differ in length");
    std::vector<Complex> out(x.size());
    par.for_each_index(x.size(), [&](std::size_t k) { out[k] = amplitude(x[k], xp[k]); });
    return out;
  }

  std::vector<Complex> amplitude_map(std::span<const double> xs, std::span<const double> xps,
                                     const Parallel& par) const override {
    std::vector<double> left(xs.size() * n_), tre(xps.size() * n_), tim(xps.size() * n_);
    par.for_each_index(xs.size(), [&](std::size_t i) { fill_row(xs[i], &left[i * n_]); });
    par.for_each_index(xps.size(), [&](std::size_t j) {
      std::vector<double> b(n_);
      fill_row(xps[j], b.data());
      simd::active().matvec2(kre_.data(), kim_.data(), n_, n_, b.data(), &tre[j * n_], &tim[j * n_]);
    });
    std::vector<Complex> out(xs.size() * xps.size());
    par.for_each_index(xs.size(), [&](std::size_t i) {
      const auto& k = simd::active();
      for (std::size_t j = 0; j < xps.size(); ++j) {
        double re = 0.0, im = 0.0;
        k.dot2(&left[i * n_], &tre[j * n_], &tim[j * n_], n_, &re, &im);
        out[i * xps.size() + j] = {re, im};
      }
    });
    return out;
  }

 private:
  void fill_row(double x, double* r) const {
    for (std::size_t i = 0; i < n_; ++i) r[i] = airy_ai(x - nodes_[i] - shift_);
  }

  Complex contract(const double* a, const double* b, double* tre, double* tim) const {
    const auto& k = simd::active();
    k.matvec2(kre_.data(), kim_.data(), n_, n_, b, tre, tim);
    double re = 0.0, im = 0.0;
    k.dot2(a, tre, tim, n_, &re, &im);
    return {re, im};
  }

  double shift_;
  std::vector<double> nodes_;
  std::size_t n_;
  std::vector<double> kre_;  // w_i w_j C(l_i, l_j) exp(i (l_i - l_j) z / 2), row-major
  std::vector<double> kim_;
};

class GaugeBatch final : public CsdBatch {
 public:
  GaugeBatch(std::unique_ptr<CsdBatch> base, GaugeParams g, double z) : base_(std::move(base)), g_(g), z_(z) {}

  Complex amplitude(double x, double xp) const override { return base_->amplitude(x, xp) + extra(x, xp); }

  std::vector<Complex> amplitude_pairs(std::span<const double> x, std::span<const double> xp,
                                       const Parallel& par) const override {
    auto out = base_->amplitude_pairs(x, xp, par);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += extra(x[k], xp[k]);
    return out;
  }

  std::vector<Complex> amplitude_map(std::span<const double> xs, std::span<const double> xps,
                                     const Parallel& par) const override {
    auto out = base_->amplitude_map(xs, xps, par);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xps.size(); ++j) out[i * xps.size() + j] += extra(xs[i], xps[j]);
    }
    return out;
  }

 private:
  Complex extra(double x, double xp) const { return std::conj(csd_phase(x, xp, z_)) * g_.correlation(xp - x); }

  std::unique_ptr<CsdBatch> base_;
  GaugeParams g_;
  double z_;
};

}  // namespace

std::unique_ptr<CsdBatch> InfiniteBeam::batch(double z, const quad::Interval& span, double rel_tol) const {
  const quad::Interval window = quad::gaussian_window(p_.alpha(), kWindowSigmas);
  auto make = [&](std::size_t panels) -> std::unique_ptr<CsdBatch> {
    return std::make_unique<InfiniteBatch>(p_, z, quad::composite_gauss_legendre(window, panels));
  };
  return refine(make, starting_panels(window), kMaxPanelsInfinite, span, rel_tol, "InfiniteBeam::batch");
}

std::unique_ptr<CsdBatch> KernelBeam::batch(double z, const quad::Interval& span, double rel_tol) const {
  const quad::Interval window = k_.envelope().outer_window();
  auto make = [&](std::size_t panels) -> std::unique_ptr<CsdBatch> {
    return std::make_unique<KernelBatch>(k_, z, quad::composite_gauss_legendre(window, panels));
  };
  return refine(make, starting_panels(window), kMaxPanelsKernel, span, rel_tol, "KernelBeam::batch");
}

std::unique_ptr<CsdBatch> GaugeBeam::batch(double z, const quad::Interval& span, double rel_tol) const {
  return std::make_unique<GaugeBatch>(base_->batch(z, span, rel_tol), g_, z);
}

}  // namespace aircoh
