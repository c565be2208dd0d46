#pragma once

#include <stdexcept>
#include <string>

namespace aspire {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside a curve's domain, or two curves disagree on their domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Curve parameters violate the family's constraints.
class InvalidCurve : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this curve kind (e.g. the density of a step).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Base of failures that come out of the numerical machinery.
class NumericError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : NumericError(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

class BracketError : public NumericError {
 public:
  BracketError(const std::string& what, double value_lo, double value_hi)
      : NumericError(what), value_lo_(value_lo), value_hi_(value_hi) {}

  double value_lo() const { return value_lo_; }
  double value_hi() const { return value_hi_; }

 private:
  double value_lo_;
  double value_hi_;
};

class NormalizationError : public NumericError {
 public:
  NormalizationError(const std::string& what, double mass)
      : NumericError(what), mass_(mass) {}

  double mass() const { return mass_; }

 private:
  double mass_;
};

/// A target sits at (or beyond) a bound of the lottery, where only an infinite
/// risk-aversion coefficient reproduces it.
class LimitError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// No coefficient within the search cap reproduces the requested target.
class UnattainableTarget : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Curvature of a piecewise curve is undefined at one of its kinks.
class CurvatureError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace aspire
