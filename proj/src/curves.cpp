#include "aspire/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "aspire/errors.hpp"

namespace aspire {

namespace {

constexpr double kQuantileTolerance = 1e-14;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

void validate_domain(const Interval& d) {
  if (!(std::isfinite(d.lo) && std::isfinite(d.hi) && d.lo < d.hi)) {
    std::ostringstream os;
    os << "curve domain must be a finite interval with lo < hi, got [" << d.lo << ", " << d.hi
       << "]";
    throw InvalidCurve(os.str());
  }
}

double beta_pdf(double a, double b, double t) {
  if ((t <= 0.0 && a < 1.0) || (t >= 1.0 && b < 1.0)) return std::numeric_limits<double>::infinity();
  return boost::math::ibeta_derivative(a, b, t);
}

// Terms with a zero coefficient are skipped so that pow(0, -1) never appears
// at the endpoints for shape parameters equal to one.
double beta_pdf_slope(double a, double b, double t) {
  const double inv_beta = 1.0 / boost::math::beta(a, b);
  double slope = 0.0;
  if (a != 1.0) slope += (a - 1.0) * std::pow(t, a - 2.0) * std::pow(1.0 - t, b - 1.0);
  if (b != 1.0) slope -= (b - 1.0) * std::pow(t, a - 1.0) * std::pow(1.0 - t, b - 2.0);
  return slope * inv_beta;
}

}  // namespace

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::uniform: return "uniform";
    case CurveKind::triangular: return "triangular";
    case CurveKind::scaled_beta: return "scaled_beta";
    case CurveKind::exponential_normalized: return "exponential_normalized";
    case CurveKind::linear: return "linear";
    case CurveKind::truncated_gaussian: return "truncated_gaussian";
    case CurveKind::log_wealth: return "log_wealth";
    case CurveKind::step: return "step";
    case CurveKind::piecewise_linear: return "piecewise_linear";
  }
  return "unknown";
}

std::optional<CurveKind> parse_curve_kind(const std::string& name) {
  for (auto k : {CurveKind::uniform, CurveKind::triangular, CurveKind::scaled_beta,
                 CurveKind::exponential_normalized, CurveKind::linear,
                 CurveKind::truncated_gaussian, CurveKind::log_wealth, CurveKind::step,
                 CurveKind::piecewise_linear}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Curve::Curve(CurveKind kind, Interval domain, CurveParams params)
    : kind_(kind), domain_(domain), params_(std::move(params)) {
  validate_domain(domain_);
  const double span = domain_.span();
  switch (kind_) {
    case CurveKind::exponential_normalized: {
      const double g = std::get<ExponentialParams>(params_).gamma;
      norm_a_ = -std::expm1(-std::abs(g) * span);
      break;
    }
    case CurveKind::truncated_gaussian: {
      const auto& p = std::get<GaussianParams>(params_);
      norm_a_ = normal_cdf((domain_.lo - p.mu) / p.sigma);
      norm_b_ = normal_cdf((domain_.hi - p.mu) / p.sigma) - norm_a_;
      if (!(norm_b_ > 0.0)) throw InvalidCurve("truncated_gaussian: no mass on the domain");
      break;
    }
    case CurveKind::log_wealth: {
      const double w = std::get<LogWealthParams>(params_).wealth;
      norm_a_ = w + domain_.lo;
      norm_b_ = std::log1p(span / norm_a_);
      break;
    }
    default: break;
  }
}

Curve Curve::uniform(Interval domain) { return {CurveKind::uniform, domain, UniformParams{}}; }

Curve Curve::linear(Interval domain) { return {CurveKind::linear, domain, LinearParams{}}; }

Curve Curve::triangular(Interval domain, std::optional<double> mode) {
  const double m = mode.value_or(0.5 * (domain.lo + domain.hi));
  if (!(m >= domain.lo && m <= domain.hi)) {
    throw InvalidCurve("triangular: mode must lie inside the domain");
  }
  return {CurveKind::triangular, domain, TriangularParams{m}};
}

Curve Curve::scaled_beta(Interval domain, double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta))) {
    throw InvalidCurve("scaled_beta: alpha and beta must be positive and finite");
  }
  return {CurveKind::scaled_beta, domain, BetaParams{alpha, beta}};
}

Curve Curve::exponential(Interval domain, double gamma) {
  if (!std::isfinite(gamma)) throw InvalidCurve("exponential_normalized: gamma must be finite");
  if (gamma == 0.0) {
    throw InvalidCurve("exponential_normalized: gamma = 0 is the linear kind; use linear");
  }
  return {CurveKind::exponential_normalized, domain, ExponentialParams{gamma}};
}

Curve Curve::exponential_or_linear(Interval domain, double gamma) {
  if (std::abs(gamma) * domain.span() < 1e-12) return linear(domain);
  return exponential(domain, gamma);
}

Curve Curve::truncated_gaussian(Interval domain, double mu, double sigma) {
  if (!(sigma > 0.0 && std::isfinite(sigma) && std::isfinite(mu))) {
    throw InvalidCurve("truncated_gaussian: sigma must be positive, mu finite");
  }
  return {CurveKind::truncated_gaussian, domain, GaussianParams{mu, sigma}};
}

Curve Curve::log_wealth(Interval domain, double wealth) {
  if (!(std::isfinite(wealth) && wealth + domain.lo > 0.0)) {
    throw InvalidCurve("log_wealth: requires wealth + lo > 0");
  }
  return {CurveKind::log_wealth, domain, LogWealthParams{wealth}};
}

Curve Curve::step(Interval domain, double at) {
  if (!(at >= domain.lo && at <= domain.hi)) {
    throw InvalidCurve("step: location must lie inside the domain");
  }
  return {CurveKind::step, domain, StepParams{at}};
}

Curve Curve::piecewise_linear(Interval domain, std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) {
    throw InvalidCurve("piecewise_linear: need at least two knots with matching x and y");
  }
  if (xs.front() != domain.lo || xs.back() != domain.hi) {
    throw InvalidCurve("piecewise_linear: first and last knot must be the domain bounds");
  }
  if (ys.front() != 0.0 || ys.back() != 1.0) {
    throw InvalidCurve("piecewise_linear: values must run from 0 to 1");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw InvalidCurve("piecewise_linear: knots must increase");
    if (!(ys[i] >= ys[i - 1])) throw InvalidCurve("piecewise_linear: values must not decrease");
  }
  return {CurveKind::piecewise_linear, domain, PiecewiseLinearParams{std::move(xs), std::move(ys)}};
}

Curve Curve::with_role(Role role) const {
  Curve c = *this;
  c.role_ = role;
  return c;
}

void Curve::require_inside(double x, const char* what) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os << what << ": x = " << x << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw DomainError(os.str());
  }
}

double Curve::value(double x) const {
  require_inside(x, "value");
  const double a = domain_.lo;
  const double b = domain_.hi;
  const double span = domain_.span();
  switch (kind_) {
    case CurveKind::uniform:
    case CurveKind::linear: return (x - a) / span;
    case CurveKind::triangular: {
      const double m = std::get<TriangularParams>(params_).mode;
      if (x <= m && m > a) return (x - a) * (x - a) / (span * (m - a));
      if (m >= b) return 1.0;
      return 1.0 - (b - x) * (b - x) / (span * (b - m));
    }
    case CurveKind::scaled_beta: {
      const auto& p = std::get<BetaParams>(params_);
      return boost::math::ibeta(p.alpha, p.beta, std::clamp((x - a) / span, 0.0, 1.0));
    }
    case CurveKind::exponential_normalized: {
      const double g = std::get<ExponentialParams>(params_).gamma;
      if (g > 0.0) return -std::expm1(-g * (x - a)) / norm_a_;
      // Risk seeking: reflection of the risk-averse curve about the domain center.
      return 1.0 + std::expm1(g * (b - x)) / norm_a_;
    }
    case CurveKind::truncated_gaussian: {
      const auto& p = std::get<GaussianParams>(params_);
      return std::clamp((normal_cdf((x - p.mu) / p.sigma) - norm_a_) / norm_b_, 0.0, 1.0);
    }
    case CurveKind::log_wealth: return std::log1p((x - a) / norm_a_) / norm_b_;
    case CurveKind::step: return x < std::get<StepParams>(params_).at ? 0.0 : 1.0;
    case CurveKind::piecewise_linear: {
      const auto& p = std::get<PiecewiseLinearParams>(params_);
      auto it = std::upper_bound(p.xs.begin(), p.xs.end(), x);
      if (it == p.xs.end()) return 1.0;
      const auto i = static_cast<std::size_t>(it - p.xs.begin()) - 1;
      const double t = (x - p.xs[i]) / (p.xs[i + 1] - p.xs[i]);
      return p.ys[i] + t * (p.ys[i + 1] - p.ys[i]);
    }
  }
  return 0.0;
}

double Curve::density(double x) const {
  require_inside(x, "density");
  const double a = domain_.lo;
  const double b = domain_.hi;
  const double span = domain_.span();
  switch (kind_) {
    case CurveKind::uniform:
    case CurveKind::linear: return 1.0 / span;
    case CurveKind::triangular: {
      const double m = std::get<TriangularParams>(params_).mode;
      if (x < m) return 2.0 * (x - a) / (span * (m - a));
      if (x > m) return 2.0 * (b - x) / (span * (b - m));
      return 2.0 / span;
    }
    case CurveKind::scaled_beta: {
      const auto& p = std::get<BetaParams>(params_);
      return beta_pdf(p.alpha, p.beta, std::clamp((x - a) / span, 0.0, 1.0)) / span;
    }
    case CurveKind::exponential_normalized: {
      const double g = std::get<ExponentialParams>(params_).gamma;
      if (g > 0.0) return g * std::exp(-g * (x - a)) / norm_a_;
      return -g * std::exp(g * (b - x)) / norm_a_;
    }
    case CurveKind::truncated_gaussian: {
      const auto& p = std::get<GaussianParams>(params_);
      return normal_pdf((x - p.mu) / p.sigma) / (p.sigma * norm_b_);
    }
    case CurveKind::log_wealth: return 1.0 / ((norm_a_ + (x - a)) * norm_b_);
    case CurveKind::step:
      throw UnsupportedError("density: the step kind is a point mass; use the closed forms");
    case CurveKind::piecewise_linear: {
      const auto& p = std::get<PiecewiseLinearParams>(params_);
      auto it = std::upper_bound(p.xs.begin(), p.xs.end(), x);
      if (it == p.xs.end()) --it;
      const auto i = static_cast<std::size_t>(it - p.xs.begin()) - 1;
      return (p.ys[i + 1] - p.ys[i]) / (p.xs[i + 1] - p.xs[i]);
    }
  }
  return 0.0;
}

double Curve::density_slope(double x) const {
  require_inside(x, "density_slope");
  const double a = domain_.lo;
  const double b = domain_.hi;
  const double span = domain_.span();
  switch (kind_) {
    case CurveKind::uniform:
    case CurveKind::linear: return 0.0;
    case CurveKind::triangular: {
      const double m = std::get<TriangularParams>(params_).mode;
      if (x < m) return 2.0 / (span * (m - a));
      if (x > m) return -2.0 / (span * (b - m));
      throw CurvatureError("density_slope: triangular density has a kink at its mode");
    }
    case CurveKind::scaled_beta: {
      const auto& p = std::get<BetaParams>(params_);
      return beta_pdf_slope(p.alpha, p.beta, (x - a) / span) / (span * span);
    }
    case CurveKind::exponential_normalized:
      return -std::get<ExponentialParams>(params_).gamma * density(x);
    case CurveKind::truncated_gaussian: {
      const auto& p = std::get<GaussianParams>(params_);
      return -(x - p.mu) / (p.sigma * p.sigma) * density(x);
    }
    case CurveKind::log_wealth: {
      const double w = norm_a_ + (x - a);
      return -1.0 / (w * w * norm_b_);
    }
    case CurveKind::step:
      throw UnsupportedError("density_slope: the step kind has no density");
    case CurveKind::piecewise_linear: {
      const auto& p = std::get<PiecewiseLinearParams>(params_);
      if (std::find(p.xs.begin() + 1, p.xs.end() - 1, x) != p.xs.end() - 1) {
        throw CurvatureError("density_slope: piecewise_linear density jumps at a knot");
      }
      return 0.0;
    }
  }
  return 0.0;
}

double Curve::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p must lie in [0, 1]");
  const double a = domain_.lo;
  const double b = domain_.hi;
  const double span = domain_.span();
  if (p == 0.0) return a;
  switch (kind_) {
    case CurveKind::uniform:
    case CurveKind::linear: return a + p * span;
    case CurveKind::triangular: {
      const double m = std::get<TriangularParams>(params_).mode;
      const double split = (m - a) / span;
      if (p <= split) return a + std::sqrt(p * span * (m - a));
      return b - std::sqrt((1.0 - p) * span * (b - m));
    }
    case CurveKind::scaled_beta: {
      const auto& bp = std::get<BetaParams>(params_);
      return a + span * boost::math::ibeta_inv(bp.alpha, bp.beta, p);
    }
    case CurveKind::exponential_normalized: {
      const double g = std::get<ExponentialParams>(params_).gamma;
      if (g > 0.0) return std::min(b, a - std::log1p(-p * norm_a_) / g);
      return std::max(a, b - std::log1p(-(1.0 - p) * norm_a_) / g);
    }
    case CurveKind::truncated_gaussian:
      return numerics::find_root([&](double x) { return value(x) - p; },
                                 {a, b, kQuantileTolerance});
    case CurveKind::log_wealth: return std::min(b, a + norm_a_ * std::expm1(p * norm_b_));
    case CurveKind::step: return std::get<StepParams>(params_).at;
    case CurveKind::piecewise_linear: {
      const auto& pl = std::get<PiecewiseLinearParams>(params_);
      for (std::size_t i = 0; i + 1 < pl.xs.size(); ++i) {
        if (pl.ys[i + 1] < p) continue;
        if (pl.ys[i] >= p) return pl.xs[i];
        const double t = (p - pl.ys[i]) / (pl.ys[i + 1] - pl.ys[i]);
        return pl.xs[i] + t * (pl.xs[i + 1] - pl.xs[i]);
      }
      return b;
    }
  }
  return a;
}

std::vector<double> Curve::knots() const {
  switch (kind_) {
    case CurveKind::triangular: return {std::get<TriangularParams>(params_).mode};
    case CurveKind::step: return {std::get<StepParams>(params_).at};
    case CurveKind::piecewise_linear: {
      const auto& xs = std::get<PiecewiseLinearParams>(params_).xs;
      return {xs.begin() + 1, xs.end() - 1};
    }
    default: return {};
  }
}

std::string Curve::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, TriangularParams>) os << "(mode=" << p.mode << ")";
        if constexpr (std::is_same_v<P, BetaParams>) os << "(" << p.alpha << ", " << p.beta << ")";
        if constexpr (std::is_same_v<P, ExponentialParams>) os << "(gamma=" << p.gamma << ")";
        if constexpr (std::is_same_v<P, GaussianParams>) {
          os << "(mu=" << p.mu << ", sigma=" << p.sigma << ")";
        }
        if constexpr (std::is_same_v<P, LogWealthParams>) os << "(w=" << p.wealth << ")";
        if constexpr (std::is_same_v<P, StepParams>) os << "(at=" << p.at << ")";
        if constexpr (std::is_same_v<P, PiecewiseLinearParams>) os << "(" << p.xs.size() << " knots)";
      },
      params_);
  os << " on [" << domain_.lo << ", " << domain_.hi << "]";
  return os.str();
}

Moments density_moments(const Curve& c, const numerics::QuadratureSpec& spec) {
  if (c.is_step()) return {std::get<StepParams>(c.params()).at, 0.0};
  const auto knots = c.knots();
  const auto kappa = numerics::cumulants([&](double x) { return c.density(x); }, c.domain().lo,
                                         c.domain().hi, 2, spec, knots);
  return {kappa[0], kappa[1]};
}

void require_shared_domain(const Curve& a, const Curve& b, const char* operation) {
  if (!(a.domain() == b.domain())) {
    std::ostringstream os;
    os << operation << ": domain mismatch [" << a.domain().lo << ", " << a.domain().hi
       << "] vs [" << b.domain().lo << ", " << b.domain().hi << "]";
    throw DomainError(os.str());
  }
}

}  // namespace aspire
