#pragma once

// Reference values computed without the library's own code paths.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

/// Ai(x) from its Maclaurin series in 50-digit arithmetic (|x| <= 12).
inline double airy_series(double xd) {
  using boost::multiprecision::pow;
  const mp x = xd;
  const mp c1 = 1 / (pow(mp(3), mp(2) / 3) * boost::math::tgamma(mp(2) / 3));
  const mp c2 = 1 / (pow(mp(3), mp(1) / 3) * boost::math::tgamma(mp(1) / 3));
  mp f = 1, g = x, sf = 1, sg = x;
  const mp x3 = x * x * x;
  for (int k = 1; k < 400; ++k) {
    f *= x3 / ((3 * k - 1) * (3 * k));
    g *= x3 / ((3 * k) * (3 * k + 1));
    sf += f;
    sg += g;
    if (abs(f) + abs(g) < mp("1e-45") * (abs(sf) + abs(sg))) break;
  }
  return static_cast<double>(c1 * sf - c2 * sg);
}

/// Ai(x) = (1/2pi) int exp(i(u^3/3 + x u)) du along Im u = eta, where the
/// integrand decays like exp(-eta t^2).
inline double airy_quadrature(double x) {
  const double eta = x > 1.0 ? std::sqrt(x) : 0.4;
  const double tmax = std::sqrt(45.0 / eta) + 1.0;
  auto f = [&](double t) {
    return std::exp(-eta * t * t + eta * eta * eta / 3.0 - x * eta) * std::cos(t * t * t / 3.0 - t * eta * eta + x * t);
  };
  double total = 0.0;
  const int pieces = 60;
  for (int i = 0; i < pieces; ++i) {
    const double a = -tmax + 2.0 * tmax * i / pieces;
    const double b = -tmax + 2.0 * tmax * (i + 1) / pieces;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-14);
  }
  return total / (2.0 * std::numbers::pi);
}

inline double airy(double x) { return boost::math::airy_ai(x); }

/// Adaptive Gauss-Kronrod from Boost over [a, b].
template <class F>
double gk(F f, double a, double b, double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, tol);
}

/// Integral split into unit-length pieces (wide oscillatory ranges).
template <class F>
double gk_pieces(F f, double a, double b, double tol = 1e-13) {
  const int n = static_cast<int>(std::ceil(b - a));
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += gk(f, a + (b - a) * i / n, a + (b - a) * (i + 1) / n, tol);
  return s;
}

/// Nested 2D Gauss-Kronrod over the whole plane (Boost maps infinite ranges).
template <class F>
double gk_plane(F f, double tol = 1e-12) {
  const double inf = std::numeric_limits<double>::infinity();
  auto outer = [&](double x) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate([&](double y) { return f(x, y); }, -inf, inf,
                                                                         20, tol);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(outer, -inf, inf, 20, tol);
}

}  // namespace oracle
