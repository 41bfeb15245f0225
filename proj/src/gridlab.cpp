#include "aircoh/gridlab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aircoh/error.hpp"

namespace aircoh::grid {

GridSpec::GridSpec(double start, double stop, std::size_t count) : start_(start), stop_(stop), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw DomainError("GridSpec: require finite start < stop");
  }
  if (count < 2) throw DomainError("GridSpec: count must be >= 2");
}

double GridSpec::at(std::size_t i) const {
  if (i + 1 == count_) return stop_;
  return start_ + static_cast<double>(i) * (stop_ - start_) / static_cast<double>(count_ - 1);
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(count_);
  for (std::size_t i = 0; i < count_; ++i) v[i] = at(i);
  return v;
}

void FieldTable::validate() const {
  if (axes.empty() || axes.size() > 2) throw DomainError("FieldTable: 1 or 2 axes required");
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.count();
  if (n != values.size()) throw DomainError("FieldTable: value count does not match the axes");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw GridEvalError("FieldTable: non-finite sample at index " + std::to_string(i), i, true);
    }
  }
}

namespace {

FieldTable table_1d(const GridSpec& g, std::vector<Complex> v, bool cplx) {
  FieldTable t;
  t.axes = {g};
  t.values = std::move(v);
  t.complex_valued = cplx;
  t.validate();
  return t;
}

void check_finite(const Complex& v, std::size_t i) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw GridEvalError("evaluator returned a non-finite value at grid index " + std::to_string(i), i, true);
  }
}

quad::Interval cover(std::initializer_list<double> pts) {
  const double lo = std::min(pts), hi = std::max(pts);
  return {lo, hi > lo ? hi : lo + 1.0};
}

}  // namespace

FieldTable eval_profile(const RealEvaluator& f, const GridSpec& g, const Parallel& par) {
  std::vector<Complex> v(g.count());
  par.for_each_index(g.count(), [&](std::size_t i) {
    v[i] = f(g.at(i));
    check_finite(v[i], i);
  });
  return table_1d(g, std::move(v), false);
}

FieldTable eval_profile_complex(const ComplexEvaluator& f, const GridSpec& g, const Parallel& par) {
  std::vector<Complex> v(g.count());
  par.for_each_index(g.count(), [&](std::size_t i) {
    v[i] = f(g.at(i));
    check_finite(v[i], i);
  });
  return table_1d(g, std::move(v), true);
}

FieldTable intensity_profile(const CsdModel& w, const GridSpec& g, double z, const Parallel& par, double rel_tol) {
  const auto xs = g.values();
  const auto b = w.batch(z, cover({g.start(), g.stop()}), rel_tol);
  auto v = b->amplitude_pairs(xs, xs, par);
  for (auto& c : v) c = {c.real(), 0.0};
  return table_1d(g, std::move(v), false);
}

FieldTable antidiagonal_slice(const CsdModel& w, const GridSpec& g, double z, const Parallel& par, double rel_tol) {
  const auto xs = g.values();
  std::vector<double> xps(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xps[i] = -xs[i];
  const auto b = w.batch(z, cover({g.start(), g.stop(), -g.start(), -g.stop()}), rel_tol);
  return table_1d(g, b->amplitude_pairs(xs, xps, par), true);
}

FieldTable shifted_input_slice(const CsdModel& w, const GridSpec& g, double z, const Parallel& par, double rel_tol) {
  const double s = specfun::ballistic_shift(z);
  std::vector<double> xs = g.values(), xps(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xps[i] = -xs[i] - s;
    xs[i] -= s;
  }
  const auto b = w.batch(0.0, cover({g.start() - s, g.stop() - s, -g.start() - s, -g.stop() - s}), rel_tol);
  return table_1d(g, b->amplitude_pairs(xs, xps, par), true);
}

FieldTable shifted_input_intensity(const CsdModel& w, const GridSpec& g, double z, const Parallel& par,
                                   double rel_tol) {
  const double s = specfun::ballistic_shift(z);
  std::vector<double> xs = g.values();
  for (double& x : xs) x -= s;
  const auto b = w.batch(0.0, cover({g.start() - s, g.stop() - s}), rel_tol);
  auto v = b->amplitude_pairs(xs, xs, par);
  for (auto& c : v) c = {c.real(), 0.0};
  return table_1d(g, std::move(v), false);
}

FieldTable density_map(const CsdModel& w, const GridSpec& gx, const GridSpec& gxp, double z, const Parallel& par,
                       double rel_tol) {
  const auto b = w.batch(z, cover({gx.start(), gx.stop(), gxp.start(), gxp.stop()}), rel_tol);
  auto v = b->amplitude_map(gx.values(), gxp.values(), par);
  for (auto& c : v) c = {c.real(), 0.0};
  FieldTable t;
  t.axes = {gx, gxp};
  t.values = std::move(v);
  t.validate();
  return t;
}

FieldTable density_map(const std::function<double(double, double)>& w0, const GridSpec& gx, const GridSpec& gxp,
                       const Parallel& par) {
  const std::size_t m = gxp.count();
  std::vector<Complex> v(gx.count() * m);
  par.for_each_index(v.size(), [&](std::size_t k) {
    v[k] = w0(gx.at(k / m), gxp.at(k % m));
    check_finite(v[k], k);
  });
  FieldTable t;
  t.axes = {gx, gxp};
  t.values = std::move(v);
  t.validate();
  return t;
}

namespace {

void require_1d(const FieldTable& t, const char* who) {
  if (t.rank() != 1 || t.size() != t.axes[0].count()) throw DomainError(std::string(who) + ": need a 1D table");
}

std::size_t argmax(const FieldTable& t) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t.real(i) > t.real(best)) best = i;
  }
  return best;
}

}  // namespace

Landmarks landmark_metrics(const FieldTable& t, double half_level) {
  require_1d(t, "landmark_metrics");
  if (!(half_level > 0.0 && half_level < 1.0)) throw DomainError("landmark_metrics: half_level must be in (0, 1)");
  const GridSpec& g = t.axes[0];
  const std::size_t i = argmax(t);
  if (i == 0 || i + 1 == t.size()) throw LandmarkError("landmark_metrics: peak on the table boundary");

  const double h = g.step();
  const double fm = t.real(i - 1), f0 = t.real(i), fp = t.real(i + 1);
  const double curv = fm - 2.0 * f0 + fp;
  double dx = 0.0, peak = f0;
  if (curv < 0.0) {
    dx = 0.5 * (fm - fp) / curv;
    peak = f0 - 0.25 * (fm - fp) * dx;
  }
  const double level = half_level * peak;

  auto crossing = [&](std::size_t a, std::size_t b) {
    const double fa = t.real(a), fb = t.real(b);
    return g.at(a) + (level - fa) / (fb - fa) * (g.at(b) - g.at(a));
  };
  std::size_t l = i;
  while (l > 0 && t.real(l - 1) >= level) --l;
  if (l == 0) throw LandmarkError("landmark_metrics: no half-level crossing left of the peak");
  std::size_t r = i;
  while (r + 1 < t.size() && t.real(r + 1) >= level) ++r;
  if (r + 1 == t.size()) throw LandmarkError("landmark_metrics: no half-level crossing right of the peak");

  return {g.at(i) + dx * h, peak, crossing(r, r + 1) - crossing(l - 1, l)};
}

std::vector<double> lobe_contrasts(const FieldTable& t, std::size_t lobes) {
  require_1d(t, "lobe_contrasts");
  std::vector<double> out;
  std::size_t k = argmax(t);
  while (out.size() < lobes) {
    const double peak = t.real(k);
    std::size_t m = k;
    while (m > 0 && t.real(m - 1) < t.real(m)) --m;
    if (m == 0) break;  // monotone down to the edge: no valley
    const double valley = t.real(m);
    out.push_back((peak - valley) / (peak + valley));
    k = m;
    while (k > 0 && t.real(k - 1) >= t.real(k)) --k;
  }
  return out;
}

double lobe_contrast(const FieldTable& t) {
  const auto c = lobe_contrasts(t, 1);
  return c.empty() ? 0.0 : c.front();
}

double off_diagonal_mass(const FieldTable& t, double band) {
  if (t.rank() != 2) throw DomainError("off_diagonal_mass: need a 2D table");
  const GridSpec& gx = t.axes[0];
  const GridSpec& gxp = t.axes[1];
  double total = 0.0, off = 0.0;
  for (std::size_t i = 0; i < gx.count(); ++i) {
    for (std::size_t j = 0; j < gxp.count(); ++j) {
      const double v = std::abs(t.values[i * gxp.count() + j]);
      total += v;
      if (std::fabs(gx.at(i) - gxp.at(j)) > band) off += v;
    }
  }
  if (!(total > 0.0)) throw UndefinedValueError("off_diagonal_mass: table is identically zero");
  return off / total;
}

double relative_rms(const FieldTable& a, const FieldTable& b) {
  if (a.size() != b.size()) throw DomainError("relative_rms: tables differ in size");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  if (!(den > 0.0)) throw UndefinedValueError("relative_rms: reference table is identically zero");
  return std::sqrt(num / den);
}

}  // namespace aircoh::grid
