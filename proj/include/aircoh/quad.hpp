#pragma once

// Adaptive Gauss-Kronrod quadrature (global error bisection, 21-point rule)
// for real or complex integrands, an iterated 2D driver, and composite
// Gauss-Legendre node sets for the batched grid evaluators.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "aircoh/error.hpp"

namespace aircoh::quad {

/// Finite integration interval lo < hi.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw DomainError("Interval: require finite lo < hi");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return 0.5 * (lo_ + hi_); }

  /// Same centre, half-width scaled by `factor`.
  Interval widened(double factor) const {
    const double half = 0.5 * width() * factor;
    return {mid() - half, mid() + half};
  }

 private:
  double lo_;
  double hi_;
};

template <class T>
struct QuadResult {
  T value{};
  double err_estimate = 0.0;
  std::size_t subdivisions = 0;
};

struct QuadOptions {
  double abs_floor = 1e-14;
  std::size_t max_subdivisions = std::size_t{1} << 16;
  /// Equal-width panels the interval is split into before adaptation starts.
  std::size_t initial_panels = 1;
};

inline constexpr double kDefaultScalarTol = 1e-8;
inline constexpr double kDefaultFieldTol = 1e-6;

/// Centred window on which exp(-alpha t^2) >= exp(-n_sigmas^2): [-n/sqrt(alpha), n/sqrt(alpha)].
inline Interval gaussian_window(double alpha, double n_sigmas) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("gaussian_window: alpha must be > 0");
  if (!(n_sigmas >= 4.0) || !std::isfinite(n_sigmas)) throw DomainError("gaussian_window: n_sigmas must be >= 4");
  const double half = n_sigmas / std::sqrt(alpha);
  return {-half, half};
}

namespace detail {

inline void check_tolerance(double rel_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) {
    throw DomainError("quadrature: rel_tol must lie in (1e-14, 1e-2)");
  }
}

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
inline std::complex<double> as_complex(const T& v) {
  return std::complex<double>(v);
}

template <class T>
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  T value{};
  double err = 0.0;
  double aux = 0.0;  // 21-point rule applied to the integrand's side channel
};

/// 21-point Kronrod estimate with embedded 10-point Gauss error on [lo, hi].
/// `f` returns std::pair<T, double>; the second member is integrated along
/// with the first but does not drive adaptation.
template <class T, class F>
Panel<T> gk21(F& f, double lo, double hi) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);

  T kron{}, gauss{};
  double aux = 0.0;
  {
    const auto [v, a] = f(c);
    kron = v * wk[0];
    aux = a * wk[0];
  }
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const auto [vp, ap] = f(c + h * xk[i]);
    const auto [vm, am] = f(c - h * xk[i]);
    const T sum = vp + vm;
    kron += sum * wk[i];
    aux += (ap + am) * wk[i];
    if (i % 2 == 1) gauss += sum * wg[i / 2];
  }
  Panel<T> p;
  p.lo = lo;
  p.hi = hi;
  p.value = kron * h;
  p.err = std::max(magnitude((kron - gauss) * h), 2.0 * 2.220446049250313e-16 * magnitude(p.value));
  p.aux = aux * h;
  return p;
}

template <class T>
struct PanelOrder {
  bool operator()(const Panel<T>& a, const Panel<T>& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.lo > b.lo;  // deterministic tie-break
  }
};

template <class T>
struct AdaptiveOutcome {
  QuadResult<T> result;
  double aux = 0.0;
  bool converged = false;
};

/// Global-error adaptive bisection. Converges when the summed error estimate
/// satisfies err <= max(rel_tol |value|, abs_floor) * budget_share.
template <class T, class F>
AdaptiveOutcome<T> adaptive(F& f, double lo, double hi, double rel_tol, const QuadOptions& opt,
                            double budget_share = 1.0) {
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelOrder<T>> heap;
  const std::size_t n0 = std::max<std::size_t>(1, opt.initial_panels);
  T total{};
  double err = 0.0, aux = 0.0;
  const double step = (hi - lo) / static_cast<double>(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    const double a = lo + step * static_cast<double>(i);
    const double b = (i + 1 == n0) ? hi : lo + step * static_cast<double>(i + 1);
    Panel<T> p = gk21<T>(f, a, b);
    total += p.value;
    err += p.err;
    aux += p.aux;
    heap.push(std::move(p));
  }
  auto within = [&] { return err <= std::max(rel_tol * magnitude(total), opt.abs_floor) * budget_share; };
  std::size_t panels = n0;
  while (!within() && panels < opt.max_subdivisions) {
    Panel<T> worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.lo + worst.hi);
    if (!(m > worst.lo && m < worst.hi)) {
      heap.push(std::move(worst));  // cannot split further in double precision
      break;
    }
    Panel<T> left = gk21<T>(f, worst.lo, m);
    Panel<T> right = gk21<T>(f, m, worst.hi);
    total += left.value + right.value - worst.value;
    err = std::max(0.0, err + left.err + right.err - worst.err);
    aux += left.aux + right.aux - worst.aux;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++panels;
  }
  // Final sum in left-to-right panel order, independent of the refinement path.
  {
    std::vector<Panel<T>> ordered;
    ordered.reserve(heap.size());
    while (!heap.empty()) {
      ordered.push_back(heap.top());
      heap.pop();
    }
    std::sort(ordered.begin(), ordered.end(), [](const Panel<T>& a, const Panel<T>& b) { return a.lo < b.lo; });
    total = T{};
    err = 0.0;
    aux = 0.0;
    for (const auto& p : ordered) {
      total += p.value;
      err += p.err;
      aux += p.aux;
    }
  }
  AdaptiveOutcome<T> out;
  out.result.value = total;
  out.result.err_estimate = err;
  out.result.subdivisions = panels;
  out.aux = aux;
  out.converged = within();
  return out;
}

template <class F>
using Value1D = std::decay_t<std::invoke_result_t<F&, double>>;

template <class F>
using Value2D = std::decay_t<std::invoke_result_t<F&, double, double>>;

[[noreturn]] inline void fail(const char* who, const std::complex<double>& best, double err) {
  throw ConvergenceError(std::string(who) + ": subdivision budget exhausted before reaching tolerance", best, err);
}

}  // namespace detail

/// Adaptive 1D integral of a real- or complex-valued integrand.
/// Throws ConvergenceError (carrying the best estimate) when the subdivision
/// budget runs out.
template <class F>
QuadResult<detail::Value1D<F>> integrate_1d(F&& f, const Interval& dom, double rel_tol, const QuadOptions& opt = {}) {
  using T = detail::Value1D<F>;
  detail::check_tolerance(rel_tol);
  auto wrapped = [&f](double x) { return std::pair<T, double>{f(x), 0.0}; };
  auto out = detail::adaptive<T>(wrapped, dom.lo(), dom.hi(), rel_tol, opt);
  if (!out.converged) detail::fail("integrate_1d", detail::as_complex(out.result.value), out.result.err_estimate);
  return out.result;
}

/// Iterated adaptive 2D integral over {x in outer, y in inner(x)}.
/// `inner` is either an Interval or a callable double -> Interval. The
/// reported error adds the outer estimate and the integrated inner estimates.
template <class F, class InnerDomain>
QuadResult<detail::Value2D<F>> integrate_2d(F&& f, const Interval& outer, InnerDomain&& inner, double rel_tol,
                                            const QuadOptions& opt = {}, const QuadOptions& inner_opt = {}) {
  using T = detail::Value2D<F>;
  detail::check_tolerance(rel_tol);
  auto inner_of = [&](double x) -> Interval {
    if constexpr (std::is_invocable_r_v<Interval, InnerDomain&, double>) {
      return inner(x);
    } else {
      return Interval(inner);
    }
  };

  std::size_t inner_panels = 0;
  auto attempt = [&](double inner_tol) {
    inner_panels = 0;
    auto row = [&](double x) {
      const Interval dom = inner_of(x);
      auto fy = [&](double y) { return std::pair<T, double>{f(x, y), 0.0}; };
      auto r = detail::adaptive<T>(fy, dom.lo(), dom.hi(), inner_tol, inner_opt);
      if (!r.converged) detail::fail("integrate_2d (inner)", detail::as_complex(r.result.value), r.result.err_estimate);
      inner_panels += r.result.subdivisions;
      return std::pair<T, double>{r.result.value, r.result.err_estimate};
    };
    return detail::adaptive<T>(row, outer.lo(), outer.hi(), rel_tol, opt, 0.5);
  };

  const double inner_tols[] = {0.1 * rel_tol, 1e-3 * rel_tol};
  detail::AdaptiveOutcome<T> out;
  for (double tol : inner_tols) {
    out = attempt(std::max(tol, 1.01e-14));
    if (!out.converged) break;
    const double total_err = out.result.err_estimate + std::fabs(out.aux);
    if (total_err <= std::max(rel_tol * detail::magnitude(out.result.value), opt.abs_floor)) {
      out.result.err_estimate = total_err;
      out.result.subdivisions += inner_panels;
      return out.result;
    }
  }
  detail::fail("integrate_2d", detail::as_complex(out.result.value), out.result.err_estimate + std::fabs(out.aux));
}

/// Fixed composite Gauss-Legendre rule: `panels` equal panels of `order` nodes.
struct NodeSet {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const noexcept { return nodes.size(); }
};

inline constexpr int kPanelOrder = 16;

/// Nodes and weights of `panels` equal-width 16-point Gauss-Legendre panels on dom.
NodeSet composite_gauss_legendre(const Interval& dom, std::size_t panels);

}  // namespace aircoh::quad
