#pragma once

#include <complex>

namespace aircoh {

using Complex = std::complex<double>;

namespace specfun {

/// Airy function Ai(x) for real x.
///
/// Maclaurin series (summed in extended precision) on the central band,
/// decaying asymptotic expansion on the right, oscillatory expansion on the
/// left. Absolute error stays below 1e-10 for |x| <= 40; returns 0 for
/// x > 200. Throws DomainError for non-finite x.
double airy_ai(double x);

/// Freely propagated Airy field exp(i(x - z^2/6) z/2) Ai(x - z^2/4),
/// solution of i du/dz = -1/2 d2u/dx2 with u(x,0) = Ai(x).
Complex airy_field(double x, double z);

/// Transverse shift z^2/4 accumulated by an Airy beam between 0 and z.
constexpr double ballistic_shift(double z) noexcept { return 0.25 * z * z; }

}  // namespace specfun
}  // namespace aircoh
