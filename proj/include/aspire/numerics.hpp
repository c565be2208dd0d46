#pragma once

#include <functional>
#include <span>
#include <vector>

namespace aspire {

/// Closed interval [lo, hi] in outcome units.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double span() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace aspire

namespace aspire::numerics {

using RealFn = std::function<double(double)>;

struct QuadratureSpec {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  int max_subdivision_depth = 40;

  /// Throws std::invalid_argument on non-positive tolerances or depth < 1.
  void validate() const;
};

struct RootBracket {
  double lo = 0.0;
  double hi = 1.0;
  double value_tolerance = 1e-10;
};

/// Adaptive composite Simpson quadrature of f over [a, b].
///
/// `knots` are points where f is known to be non-smooth; the interval is split
/// at every knot strictly inside (a, b) before adaptive refinement starts.
/// Throws QuadratureError (carrying the best estimate and its error bound)
/// when some panel still fails the local test at max_subdivision_depth.
double integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec = {},
                 std::span<const double> knots = {});

/// Bracketed root of g on [lo, hi]: bisection safeguard with secant and
/// inverse-quadratic steps. Returns x with |g(x)| <= value_tolerance, or the
/// point where the bracket collapsed to machine resolution around a sign change.
double find_root(const RealFn& g, const RootBracket& bracket);

/// (f(x+h) - f(x-h)) / 2h. When x-h or x+h leaves `domain`, the matching
/// one-sided second-order stencil is used instead.
double central_difference(const RealFn& f, double x, double h, const Interval& domain);

/// Cumulants kappa_1..kappa_order of a density on [a, b] (order <= 8).
///
/// Raw moments are taken about the first moment (cumulants of order >= 2 are
/// shift invariant), then converted with the moment-to-cumulant recursion.
/// Throws NormalizationError when the density mass differs from 1 by more than 1e-6.
std::vector<double> cumulants(const RealFn& density, double a, double b, int order,
                              const QuadratureSpec& spec = {},
                              std::span<const double> knots = {});

/// Moment-to-cumulant recursion on raw moments m[0..n] (m[0] = 1).
/// Returns kappa[0..n] with kappa[0] = 0.
std::vector<double> cumulants_from_moments(std::span<const double> raw_moments);

}  // namespace aspire::numerics
