#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aspire/numerics.hpp"

namespace aspire {

enum class CurveKind {
  uniform,
  triangular,
  scaled_beta,
  exponential_normalized,
  linear,
  truncated_gaussian,
  log_wealth,
  step,
  piecewise_linear,
};

/// Reporting tag only; the mathematics of a curve never depends on it.
enum class Role { lottery, utility };

std::string to_string(CurveKind kind);
std::optional<CurveKind> parse_curve_kind(const std::string& name);

struct UniformParams {};
struct LinearParams {};
struct TriangularParams {
  double mode;
};
struct BetaParams {
  double alpha;
  double beta;
};
/// Risk-aversion coefficient in 1/outcome units; risk tolerance is 1/gamma.
struct ExponentialParams {
  double gamma;
};
struct GaussianParams {
  double mu;
  double sigma;
};
/// U(x) = ln((w+x)/(w+a)) / ln((w+b)/(w+a)), requires w + a > 0.
struct LogWealthParams {
  double wealth;
};
struct StepParams {
  double at;
};
/// Knots (x_i, y_i) from (a, 0) to (b, 1); x strictly increasing, y nondecreasing.
struct PiecewiseLinearParams {
  std::vector<double> xs;
  std::vector<double> ys;
};

using CurveParams =
    std::variant<UniformParams, LinearParams, TriangularParams, BetaParams, ExponentialParams,
                 GaussianParams, LogWealthParams, StepParams, PiecewiseLinearParams>;

/// A normalized nondecreasing function on a bounded interval: value(a) = 0,
/// value(b) = 1. The same object serves as a cumulative distribution (lottery)
/// or as a normalized utility function, and its derivative as either a
/// probability density or a utility density.
///
/// Curves are immutable once built; the factories validate parameters and
/// throw InvalidCurve on violations.
class Curve {
 public:
  static Curve uniform(Interval domain);
  static Curve linear(Interval domain);
  /// Symmetric when `mode` is omitted.
  static Curve triangular(Interval domain, std::optional<double> mode = std::nullopt);
  static Curve scaled_beta(Interval domain, double alpha, double beta);
  /// gamma = 0 is rejected: the linear kind is its exact limit.
  static Curve exponential(Interval domain, double gamma);
  /// Exponential utility for any finite gamma, substituting the linear kind at
  /// (numerically) zero gamma.
  static Curve exponential_or_linear(Interval domain, double gamma);
  static Curve truncated_gaussian(Interval domain, double mu, double sigma);
  static Curve log_wealth(Interval domain, double wealth);
  static Curve step(Interval domain, double at);
  static Curve piecewise_linear(Interval domain, std::vector<double> xs, std::vector<double> ys);

  CurveKind kind() const { return kind_; }
  const Interval& domain() const { return domain_; }
  const CurveParams& params() const { return params_; }
  std::optional<Role> role_hint() const { return role_; }
  Curve with_role(Role role) const;
  bool is_step() const { return kind_ == CurveKind::step; }

  /// Curve value at x in [a, b]; throws DomainError outside.
  double value(double x) const;
  /// Derivative of value. Throws UnsupportedError for the step kind.
  double density(double x) const;
  /// Derivative of the density. Throws CurvatureError at a kink.
  double density_slope(double x) const;
  /// Generalized inverse inf{x in [a, b] : value(x) >= p}.
  double quantile(double p) const;
  /// Points where the density is not smooth (mode, knots, step location).
  std::vector<double> knots() const;

  /// Short human-readable description, e.g. "scaled_beta(2, 8)".
  std::string describe() const;

 private:
  Curve(CurveKind kind, Interval domain, CurveParams params);

  void require_inside(double x, const char* what) const;

  CurveKind kind_;
  Interval domain_;
  CurveParams params_;
  std::optional<Role> role_;
  // Normalizers fixed at construction.
  double norm_a_ = 0.0;
  double norm_b_ = 0.0;
};

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of the curve's density. The step kind answers
/// symbolically (location, 0).
Moments density_moments(const Curve& c, const numerics::QuadratureSpec& spec = {});

/// Throws DomainError unless both curves live on the identical interval.
void require_shared_domain(const Curve& a, const Curve& b, const char* operation);

}  // namespace aspire
