#pragma once

// Grid evaluation of profiles, anti-diagonal CSD slices and 2D amplitude
// maps, plus landmark extraction on 1D tables.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aircoh/coherence.hpp"
#include "aircoh/parallel.hpp"

namespace aircoh::grid {

/// Uniform grid of `count` points from start to stop inclusive.
class GridSpec {
 public:
  GridSpec(double start, double stop, std::size_t count);

  double start() const noexcept { return start_; }
  double stop() const noexcept { return stop_; }
  std::size_t count() const noexcept { return count_; }
  double step() const noexcept { return (stop_ - start_) / static_cast<double>(count_ - 1); }
  /// i-th point; the last one is exactly `stop`.
  double at(std::size_t i) const;
  std::vector<double> values() const;

 private:
  double start_;
  double stop_;
  std::size_t count_;
};

using Meta = std::vector<std::pair<std::string, std::string>>;

/// One sampled quantity over 1 or 2 axes, row-major (first axis slowest).
struct FieldTable {
  std::vector<GridSpec> axes;
  std::vector<Complex> values;
  bool complex_valued = false;
  Meta meta;

  std::size_t rank() const noexcept { return axes.size(); }
  std::size_t size() const noexcept { return values.size(); }
  double real(std::size_t i) const { return values[i].real(); }
  /// Throws DomainError unless the shape matches and every sample is finite.
  void validate() const;
};

using RealEvaluator = std::function<double(double)>;
using ComplexEvaluator = std::function<Complex(double)>;

FieldTable eval_profile(const RealEvaluator& f, const GridSpec& g, const Parallel& par = Parallel{});
FieldTable eval_profile_complex(const ComplexEvaluator& f, const GridSpec& g, const Parallel& par = Parallel{});

/// I(x, z) on g via the batched evaluator.
FieldTable intensity_profile(const CsdModel& w, const GridSpec& g, double z, const Parallel& par = Parallel{},
                             double rel_tol = quad::kDefaultFieldTol);

/// W0(x, -x, z) on g (complex).
FieldTable antidiagonal_slice(const CsdModel& w, const GridSpec& g, double z, const Parallel& par = Parallel{},
                              double rel_tol = quad::kDefaultFieldTol);

/// W0(x - z^2/4, -x - z^2/4, 0): the input slice translated along the
/// ballistic trajectory, for comparison with antidiagonal_slice at z.
FieldTable shifted_input_slice(const CsdModel& w, const GridSpec& g, double z, const Parallel& par = Parallel{},
                               double rel_tol = quad::kDefaultFieldTol);

/// I(x - z^2/4, 0) on g.
FieldTable shifted_input_intensity(const CsdModel& w, const GridSpec& g, double z, const Parallel& par = Parallel{},
                                   double rel_tol = quad::kDefaultFieldTol);

/// Re W0(x, x', z) over gx (rows) by gxp (columns).
FieldTable density_map(const CsdModel& w, const GridSpec& gx, const GridSpec& gxp, double z,
                       const Parallel& par = Parallel{}, double rel_tol = quad::kDefaultFieldTol);
FieldTable density_map(const std::function<double(double, double)>& w0, const GridSpec& gx, const GridSpec& gxp,
                       const Parallel& par = Parallel{});

struct Landmarks {
  double peak_x;
  double peak_val;
  double fwhm;
};

/// Parabola-refined global maximum and main-lobe width at half_level * peak.
/// Throws LandmarkError when the maximum sits on an endpoint or a crossing
/// is missing on either side.
Landmarks landmark_metrics(const FieldTable& t, double half_level = 0.5);

/// (peak - m) / (peak + m) with m the first local minimum to the left of the
/// global maximum; 0 when there is none.
double lobe_contrast(const FieldTable& t);

/// Contrasts (peak - m) / (peak + m) of up to `lobes` successive lobes,
/// walking left from the global maximum; m is the valley left of each peak.
std::vector<double> lobe_contrasts(const FieldTable& t, std::size_t lobes);

/// Fraction of sum |v| lying farther than `band` from the main diagonal of a
/// square 2D table.
double off_diagonal_mass(const FieldTable& t, double band);

/// sqrt(mean |a - b|^2) / sqrt(mean |b|^2) over two tables sharing a grid.
double relative_rms(const FieldTable& a, const FieldTable& b);

}  // namespace aircoh::grid
