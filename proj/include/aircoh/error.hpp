#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace aircoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (non-finite input, bad parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its subdivision budget before meeting tolerance.
/// The best estimate reached so far is kept so callers can inspect it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best, double err_estimate)
      : Error(what), best_(best), err_estimate_(err_estimate) {}

  std::complex<double> best_estimate() const noexcept { return best_; }
  double err_estimate() const noexcept { return err_estimate_; }

 private:
  std::complex<double> best_;
  double err_estimate_;
};

/// Quantity is mathematically undefined at the requested point
/// (e.g. degree of coherence where an intensity vanishes).
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

/// Landmark extraction failed (peak on the table boundary, no half crossing).
class LandmarkError : public Error {
 public:
  using Error::Error;
};

/// Grid evaluation aborted; carries the linear index of the failing sample.
class GridEvalError : public Error {
 public:
  GridEvalError(const std::string& what, std::size_t index, bool numerical)
      : Error(what), index_(index), numerical_(numerical) {}

  std::size_t index() const noexcept { return index_; }
  /// True when the underlying cause was a quadrature/convergence failure.
  bool numerical() const noexcept { return numerical_; }

 private:
  std::size_t index_;
  bool numerical_;
};

}  // namespace aircoh
