#pragma once

#include "aspire/curves.hpp"
#include "aspire/numerics.hpp"

namespace aspire {

/// The four dual quantities for one (lottery, utility) pair.
struct DualityResult {
  double expected_utility;
  double expected_disutility;
  double certain_equivalent;
  double aspiration_equivalent;
};

/// Integral of U dF, computed as the integral of f(x) U(x).
/// A step lottery at x0 yields U(x0); a step utility at x0 yields 1 - F(x0).
double expected_utility(const Curve& lottery, const Curve& utility,
                        const numerics::QuadratureSpec& spec = {});

/// Integral of F dU, computed as the integral of u(x) F(x) by its own
/// quadrature (never as 1 - EU).
double expected_disutility(const Curve& lottery, const Curve& utility,
                           const numerics::QuadratureSpec& spec = {});

/// U^-1(EU); rejects step utilities.
double certain_equivalent(const Curve& lottery, const Curve& utility,
                          const numerics::QuadratureSpec& spec = {});

/// F^-1(EDU): the location of the step utility with the same expected
/// utility. The probability of exceeding it equals EU. Rejects step lotteries.
double aspiration_equivalent(const Curve& lottery, const Curve& utility,
                             const numerics::QuadratureSpec& spec = {});

DualityResult evaluate_pair(const Curve& lottery, const Curve& utility,
                            const numerics::QuadratureSpec& spec = {});

/// The exponential risk-aversion coefficient whose aspiration equivalent on
/// `lottery` equals `target`. Negative results mean risk seeking; zero means
/// the linear utility.
///
/// Throws LimitError when the target sits at or beyond a bound of the lottery
/// and UnattainableTarget when |gamma| (b - a) would have to exceed 500.
double effective_gamma(const Curve& lottery, double target,
                       const numerics::QuadratureSpec& spec = {});

/// Largest |gamma| (b - a) effective_gamma searches.
inline constexpr double kEffectiveGammaCap = 500.0;

}  // namespace aspire
