#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "aircoh/quad.hpp"

namespace aircoh::detail {

/// Roughly one starting panel per unit length: Airy integrands oscillate on
/// that scale over the coordinate ranges in use.
inline std::size_t initial_panels(const quad::Interval& w) {
  return static_cast<std::size_t>(std::clamp(std::ceil(w.width()), 4.0, 1024.0));
}

/// Integral over a truncated Gaussian-damped domain. If the integrand at the
/// window edges is not negligible against the sampled peak (1e-12), the
/// window is widened once by 1.5x before integrating.
template <class F>
auto windowed_integral(F& f, quad::Interval w, double rel_tol) {
  constexpr int kSamples = 64;
  double peak = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = w.lo() + w.width() * static_cast<double>(i) / kSamples;
    peak = std::max(peak, static_cast<double>(std::abs(f(t))));
  }
  const double edge = std::max<double>(std::abs(f(w.lo())), std::abs(f(w.hi())));
  if (edge > 1e-12 * peak) w = w.widened(1.5);
  quad::QuadOptions opt;
  opt.initial_panels = initial_panels(w);
  return quad::integrate_1d(f, w, rel_tol, opt);
}

}  // namespace aircoh::detail
