#include "aircoh/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aircoh/error.hpp"

namespace aircoh::specfun {
namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kMinusAiPrime0 = 0.258819403792806798405183560189203963L;

// Band where the Maclaurin series is used. On the right the series loses
// relative accuracy to cancellation well before x = 8 (Ai decays while the
// partial sums grow like Bi), so the decaying expansion takes over earlier.
constexpr double kSeriesLeft = -8.0;
constexpr double kSeriesRight = 6.5;
constexpr double kUnderflowEdge = 200.0;

double maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x;
  long double tf = 1.0L, tg = x;
  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int k = 1; k < 400; ++k) {
    const long double k3 = 3.0L * k;
    tf *= x3 / ((k3 - 1.0L) * k3);
    tg *= x3 / (k3 * (k3 + 1.0L));
    f += tf;
    g += tg;
    if (std::fabs(tf) + std::fabs(tg) <= eps * (std::fabs(f) + std::fabs(g)) && k > 2) break;
  }
  return static_cast<double>(kAi0 * f - kMinusAiPrime0 * g);
}

// Coefficients u_k of the Airy asymptotic expansions:
// u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1)).
struct AsymptoticTerms {
  static constexpr int kCount = 40;
  double u[kCount];
  constexpr AsymptoticTerms() : u{} {
    u[0] = 1.0;
    for (int k = 1; k < kCount; ++k) {
      const double kk = k;
      u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / (216.0 * kk * (2 * kk - 1));
    }
  }
};
constexpr AsymptoticTerms kTerms{};

double decaying_asymptotic(double x) {
  const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
  double sum = 1.0, term = 1.0, last = 1.0;
  for (int k = 1; k < AsymptoticTerms::kCount; ++k) {
    term = kTerms.u[k] / std::pow(zeta, k);
    if (term > last) break;  // past the smallest term
    sum += (k % 2 ? -term : term);
    if (term < 1e-17 * sum) break;
    last = term;
  }
  return std::exp(-zeta) * sum / (2.0 * std::sqrt(std::numbers::pi) * std::sqrt(std::sqrt(x)));
}

double oscillatory_asymptotic(double x) {
  const double y = -x;
  const double zeta = (2.0 / 3.0) * y * std::sqrt(y);
  double even = 0.0, odd = 0.0, last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < AsymptoticTerms::kCount; ++k) {
    const double term = kTerms.u[k] / std::pow(zeta, k);
    if (term > last) break;
    const int j = k / 2;
    const double signed_term = (j % 2 ? -term : term);
    if (k % 2 == 0) {
      even += signed_term;
    } else {
      odd += signed_term;
    }
    if (term < 1e-17) break;
    last = term;
  }
  const double phase = zeta - 0.25 * std::numbers::pi;
  return (std::cos(phase) * even + std::sin(phase) * odd) /
         (std::sqrt(std::numbers::pi) * std::sqrt(std::sqrt(y)));
}

}  // namespace

double airy_ai(double x) {
  if (!std::isfinite(x)) throw DomainError("airy_ai: non-finite argument");
  if (x > kUnderflowEdge) return 0.0;
  if (x > kSeriesRight) return decaying_asymptotic(x);
  if (x < kSeriesLeft) return oscillatory_asymptotic(x);
  return maclaurin(x);
}

Complex airy_field(double x, double z) {
  if (!std::isfinite(x) || !std::isfinite(z)) throw DomainError("airy_field: non-finite argument");
  const double amplitude = airy_ai(x - ballistic_shift(z));
  const double phase = (x - z * z / 6.0) * z / 2.0;
  return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
}

}  // namespace aircoh::specfun
