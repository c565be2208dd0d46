#pragma once

#include <limits>
#include <vector>

#include "aspire/curves.hpp"
#include "aspire/numerics.hpp"

namespace aspire {

/// Infinite risk or spread tolerance (a zero second derivative). Formulas
/// treat it as a vanishing correction term.
inline constexpr double kInfiniteTolerance = std::numeric_limits<double>::infinity();

/// -U'(x)/U''(x). Exactly 1/gamma for exponential utilities, infinite for linear.
double risk_tolerance(const Curve& utility, double x);

/// -F'(x)/F''(x) = -f(x)/f'(x); infinite where f'(x) = 0 (uniform lotteries).
/// Throws CurvatureError at a kink of a piecewise kind.
double spread_tolerance(const Curve& lottery, double x);

/// Second-order Taylor approximation of a certain or aspiration equivalent
/// next to its exact value.
///
/// approx = first_moment + tolerance_term, with
/// tolerance_term = -central_second_moment / (2 * tolerance), and
/// premium = first_moment - approx. For aspiration equivalents this premium
/// is the spread premium (also called the aspiration premium).
struct ApproxReport {
  double exact;
  double approx;
  double first_moment;
  double central_second_moment;
  double tolerance;  // risk or spread tolerance at the expansion point
  double tolerance_term;
  double premium;
};

/// Expansion around the lottery mean with the utility's risk tolerance there.
ApproxReport ce_taylor2(const Curve& lottery, const Curve& utility,
                        const numerics::QuadratureSpec& spec = {});

/// Expansion around the utility-density mean with the lottery's spread
/// tolerance there. A kink at the expansion point raises CurvatureError.
ApproxReport ae_taylor2(const Curve& lottery, const Curve& utility,
                        const numerics::QuadratureSpec& spec = {});

/// Aspiration equivalent of an exponential lottery
/// F(x) = (1 - e^{-lambda (x-a)}) / (1 - e^{-lambda (b-a)}):
///   closed form   AE = a - ln E_u[e^{-lambda (x-a)}] / lambda
///   series        AE = a + sum_k (-1)^{k+1} lambda^{k-1} kappa'_k / k!
/// where kappa'_k are cumulants of x - a under the utility density.
struct CumulantSeries {
  double lambda;
  double closed_form;
  double series;                      // partial sum through `terms` cumulants
  std::vector<double> terms;          // individual series terms, k = 1..terms
  std::vector<double> partial_sums;
  bool diverging;  // some term past k = 3 larger in magnitude than the third
};

/// `lottery` must be the exponential_normalized kind with gamma = lambda > 0;
/// `terms` in [1, 8].
CumulantSeries ae_cumulant_series(const Curve& lottery, const Curve& utility, int terms,
                                  const numerics::QuadratureSpec& spec = {});

}  // namespace aspire
