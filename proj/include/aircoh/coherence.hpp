#pragma once

// Cross-spectral densities built from randomly displaced Airy beams.
//
// A CSD model is evaluated through its amplitude W0(x, x', z); the full CSD is
// W = exp(i (x' - x) z / 2) W0. Point evaluations go through adaptive
// quadrature. Batched evaluations at one propagation distance go through a
// fixed composite Gauss-Legendre node set in the displacement variable, sized
// once per batch so every grid point shares the same rule.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aircoh/parallel.hpp"
#include "aircoh/quad.hpp"
#include "aircoh/specfun.hpp"

namespace aircoh {

inline constexpr double kWindowSigmas = 8.0;

/// Default x-window for integrals over the transverse coordinate.
inline quad::Interval default_x_window() { return {-60.0, 20.0}; }

/// Phase exp(i (x' - x) z / 2) separating W from W0.
inline Complex csd_phase(double x, double xp, double z) { return std::polar(1.0, 0.5 * (xp - x) * z); }

/// Gaussian spread P(lambda) = sqrt(alpha/pi) exp(-alpha lambda^2), alpha = 1/sigma^2.
class SpreadParams {
 public:
  explicit SpreadParams(double sigma);

  double sigma() const noexcept { return sigma_; }
  double alpha() const noexcept { return 1.0 / (sigma_ * sigma_); }
  double density(double lambda) const;

 private:
  double sigma_;
};

/// Gaussian bound exp(-alpha (l^2 + l'^2) - beta (l - l')^2) that sets the
/// integration windows of a displacement kernel.
struct KernelEnvelope {
  double alpha;
  double beta;

  /// Window for the outer displacement variable (marginal of the bound).
  quad::Interval outer_window(double n_sigmas = kWindowSigmas) const;
  /// Window for l' conditional on l.
  quad::Interval inner_window(double lambda, double n_sigmas = kWindowSigmas) const;
};

/// Correlation C(l, l') = <c*(l) c(l')> between displacements.
class DisplacementKernel {
 public:
  using Evaluator = std::function<Complex(double, double)>;

  DisplacementKernel(Evaluator c, KernelEnvelope envelope, std::string label);

  Complex operator()(double lambda, double lambdap) const { return eval_(lambda, lambdap); }
  const KernelEnvelope& envelope() const noexcept { return envelope_; }
  const std::string& label() const noexcept { return label_; }

  DisplacementKernel scaled(double factor) const;

 private:
  Evaluator eval_;
  KernelEnvelope envelope_;
  std::string label_;
};

/// Normalized narrow Gaussian kernel (1/(pi s^2)) exp(-(l^2 + l'^2)/s^2):
/// the rank-one coherent limit concentrated at l = l' = 0.
DisplacementKernel narrow_gaussian_kernel(double width);

/// Additive correlation F(x' - x) with positive Gaussian spectrum
/// Ft(eta) = f_amp exp(-eta^2 / f_width^2).
class GaugeParams {
 public:
  GaugeParams(double f_amp, double f_width);

  double f_amp() const noexcept { return f_amp_; }
  double f_width() const noexcept { return f_width_; }
  /// Ft(eta)
  double spectrum(double eta) const;
  /// F(d) = int Ft(eta) exp(i d eta) d eta = f_amp f_width sqrt(pi) exp(-d^2 f_width^2 / 4)
  double correlation(double d) const;

 private:
  double f_amp_;
  double f_width_;
};

/// Batched amplitude evaluator at a fixed z. Thread-safe for concurrent reads.
class CsdBatch {
 public:
  virtual ~CsdBatch() = default;

  virtual Complex amplitude(double x, double xp) const = 0;

  /// amplitude(x[k], xp[k]) for every k.
  virtual std::vector<Complex> amplitude_pairs(std::span<const double> x, std::span<const double> xp,
                                               const Parallel& par) const;
  /// Row-major amplitude(xs[i], xps[j]).
  virtual std::vector<Complex> amplitude_map(std::span<const double> xs, std::span<const double> xps,
                                             const Parallel& par) const;
};

/// A partially coherent Airy beam described by its CSD.
class CsdModel {
 public:
  virtual ~CsdModel() = default;

  /// W0(x, x', z): the CSD with the fast phase prefactor removed.
  virtual Complex amplitude(double x, double xp, double z) const = 0;
  /// I(x, z) = W(x, x, z).
  virtual double intensity(double x, double z) const { return amplitude(x, x, z).real(); }
  /// Batched evaluator for points with x, x' inside `span`.
  virtual std::unique_ptr<CsdBatch> batch(double z, const quad::Interval& span, double rel_tol) const = 0;

  virtual std::string family() const = 0;
  virtual std::vector<std::pair<std::string, double>> parameters() const = 0;

  /// W(x, x', z)
  Complex csd(double x, double xp, double z) const { return csd_phase(x, xp, z) * amplitude(x, xp, z); }
};

/// Infinite-energy beam with uncorrelated displacements, C0 = P(l) delta(l - l').
class InfiniteBeam final : public CsdModel {
 public:
  explicit InfiniteBeam(SpreadParams p, double rel_tol = quad::kDefaultScalarTol);

  Complex amplitude(double x, double xp, double z) const override;
  std::unique_ptr<CsdBatch> batch(double z, const quad::Interval& span, double rel_tol) const override;
  std::string family() const override { return "infinite"; }
  std::vector<std::pair<std::string, double>> parameters() const override;

  const SpreadParams& spread() const noexcept { return p_; }

 private:
  SpreadParams p_;
  double rel_tol_;
};

/// Beam whose CSD is the double displacement integral of a kernel.
class KernelBeam final : public CsdModel {
 public:
  KernelBeam(DisplacementKernel k, std::string family, std::vector<std::pair<std::string, double>> params,
             double rel_tol = quad::kDefaultScalarTol);

  Complex amplitude(double x, double xp, double z) const override;
  std::unique_ptr<CsdBatch> batch(double z, const quad::Interval& span, double rel_tol) const override;
  std::string family() const override { return family_; }
  std::vector<std::pair<std::string, double>> parameters() const override { return params_; }

  const DisplacementKernel& kernel() const noexcept { return k_; }

 private:
  DisplacementKernel k_;
  std::string family_;
  std::vector<std::pair<std::string, double>> params_;
  double rel_tol_;
};

/// W_F = W + F(x' - x) on top of any base model.
class GaugeBeam final : public CsdModel {
 public:
  GaugeBeam(std::shared_ptr<const CsdModel> base, GaugeParams g);

  Complex amplitude(double x, double xp, double z) const override;
  double intensity(double x, double z) const override;
  std::unique_ptr<CsdBatch> batch(double z, const quad::Interval& span, double rel_tol) const override;
  std::string family() const override { return "gauge"; }
  std::vector<std::pair<std::string, double>> parameters() const override;

 private:
  std::shared_ptr<const CsdModel> base_;
  GaugeParams g_;
};

// ---------------------------------------------------------------------------
// Point operations (adaptive quadrature).

/// W(x, x', z) of a kernel-driven CSD (double displacement integral).
Complex csd_from_kernel(const DisplacementKernel& k, double x, double xp, double z,
                        double rel_tol = quad::kDefaultScalarTol);
/// W0(x, x', z) of a kernel-driven CSD.
Complex amplitude_from_kernel(const DisplacementKernel& k, double x, double xp, double z,
                              double rel_tol = quad::kDefaultScalarTol);

/// W(x, x', z) of the infinite-energy beam (single displacement integral).
Complex csd_infinite(const SpreadParams& p, double x, double xp, double z, double rel_tol = quad::kDefaultScalarTol);
/// W0(x, x', z) of the infinite-energy beam; real.
double amplitude_infinite(const SpreadParams& p, double x, double xp, double z,
                          double rel_tol = quad::kDefaultScalarTol);
/// I(x, z) = I(x - z^2/4, 0) >= 0.
double intensity_infinite(const SpreadParams& p, double x, double z, double rel_tol = quad::kDefaultScalarTol);

/// gamma = W(x, x', z) / sqrt(I(x, z) I(x', z)). Throws UndefinedValueError
/// when either intensity vanishes.
Complex degree_of_coherence(const CsdModel& w, double x, double xp, double z);

struct Flow {
  double jx;
  double jz;
};

/// Energy flow (z I(x - z^2/4), 2 I(x - z^2/4)) with the prefactor c omega^2 = 1.
Flow flow_infinite(const SpreadParams& p, double x, double z, double rel_tol = quad::kDefaultScalarTol);

/// Displacement-coefficient profile c(l) with a Gaussian envelope exp(-alpha l^2)
/// used to truncate the displacement integral.
struct CoefficientProfile {
  std::function<Complex(double)> c;
  double envelope_alpha;
};

/// U(x, z) = int c(l) Ai(x - l, z) dl.
Complex synth_superposition(const CoefficientProfile& c, double x, double z, double rel_tol = quad::kDefaultScalarTol);

/// c(l) = int U(x, 0) Ai(x - l) dx over the transverse window.
Complex recover_coefficients(const std::function<Complex(double)>& u0, double lambda,
                             const quad::Interval& x_window = default_x_window(),
                             double rel_tol = quad::kDefaultScalarTol);

/// W_F(x, x', z) = W(x, x', z) + F(x' - x).
Complex csd_gauge_extend(const CsdModel& w, const GaugeParams& g, double x, double xp, double z);

}  // namespace aircoh
