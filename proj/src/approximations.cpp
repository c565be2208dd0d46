#include "aspire/approximations.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aspire/duality.hpp"
#include "aspire/errors.hpp"

namespace aspire {

namespace {

double curvature_ratio(const Curve& c, double x) {
  const double slope = c.density_slope(x);
  if (slope == 0.0) return kInfiniteTolerance;
  return -c.density(x) / slope;
}

double correction(double variance, double tolerance) {
  if (std::isinf(tolerance)) return 0.0;
  return -0.5 * variance / tolerance;
}

}  // namespace

double risk_tolerance(const Curve& utility, double x) {
  switch (utility.kind()) {
    case CurveKind::exponential_normalized:
      return 1.0 / std::get<ExponentialParams>(utility.params()).gamma;
    case CurveKind::linear:
    case CurveKind::uniform: return kInfiniteTolerance;
    case CurveKind::step: throw UnsupportedError("risk_tolerance: step utility");
    default: return curvature_ratio(utility, x);
  }
}

double spread_tolerance(const Curve& lottery, double x) {
  switch (lottery.kind()) {
    case CurveKind::exponential_normalized:
      return 1.0 / std::get<ExponentialParams>(lottery.params()).gamma;
    case CurveKind::linear:
    case CurveKind::uniform: return kInfiniteTolerance;
    case CurveKind::step: throw UnsupportedError("spread_tolerance: step lottery");
    default: return curvature_ratio(lottery, x);
  }
}

ApproxReport ce_taylor2(const Curve& lottery, const Curve& utility,
                        const numerics::QuadratureSpec& spec) {
  require_shared_domain(lottery, utility, "ce_taylor2");
  const Moments m = density_moments(lottery, spec);
  const double tol = risk_tolerance(utility, m.mean);
  const double term = correction(m.variance, tol);
  const double approx = m.mean + term;
  return {certain_equivalent(lottery, utility, spec), approx, m.mean, m.variance, tol, term,
          m.mean - approx};
}

ApproxReport ae_taylor2(const Curve& lottery, const Curve& utility,
                        const numerics::QuadratureSpec& spec) {
  require_shared_domain(lottery, utility, "ae_taylor2");
  const Moments m = density_moments(utility, spec);
  double tol;
  try {
    tol = spread_tolerance(lottery, m.mean);
  } catch (const CurvatureError& e) {
    std::ostringstream os;
    os << "ae_taylor2: spread tolerance undefined at the utility mean " << m.mean << " ("
       << e.what() << "); on a flat segment the uniform-limit answer is the utility mean";
    throw CurvatureError(os.str());
  }
  const double term = correction(m.variance, tol);
  const double approx = m.mean + term;
  return {aspiration_equivalent(lottery, utility, spec), approx, m.mean, m.variance, tol, term,
          m.mean - approx};
}

CumulantSeries ae_cumulant_series(const Curve& lottery, const Curve& utility, int terms,
                                  const numerics::QuadratureSpec& spec) {
  require_shared_domain(lottery, utility, "ae_cumulant_series");
  if (lottery.kind() != CurveKind::exponential_normalized) {
    throw std::invalid_argument("ae_cumulant_series: lottery must be exponential_normalized");
  }
  const double lambda = std::get<ExponentialParams>(lottery.params()).gamma;
  if (!(lambda > 0.0)) throw std::invalid_argument("ae_cumulant_series: needs lambda > 0");
  if (terms < 1 || terms > 8) throw std::invalid_argument("ae_cumulant_series: terms in [1, 8]");
  if (utility.is_step()) throw UnsupportedError("ae_cumulant_series: step utility");

  const double a = utility.domain().lo;
  const double b = utility.domain().hi;
  const auto knots = utility.knots();
  auto density = [&](double x) { return utility.density(x); };

  CumulantSeries out{};
  out.lambda = lambda;
  const double laplace = numerics::integrate(
      [&](double x) { return utility.density(x) * std::exp(-lambda * (x - a)); }, a, b, spec,
      knots);
  out.closed_form = a - std::log(laplace) / lambda;

  const auto kappa = numerics::cumulants(density, a, b, terms, spec, knots);
  double sum = a;
  double factorial = 1.0;
  double lambda_power = 1.0;  // lambda^{k-1}
  for (int k = 1; k <= terms; ++k) {
    factorial *= k;
    const double cumulant = kappa[static_cast<std::size_t>(k - 1)] - (k == 1 ? a : 0.0);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    const double term = sign * lambda_power * cumulant / factorial;
    out.terms.push_back(term);
    sum += term;
    out.partial_sums.push_back(sum);
    lambda_power *= lambda;
  }
  out.series = sum;
  // Divergence: some term beyond the third outgrows the third.
  for (std::size_t k = 3; k < out.terms.size(); ++k) {
    if (std::abs(out.terms[k]) > std::abs(out.terms[2])) out.diverging = true;
  }
  return out;
}

}  // namespace aspire
