#include "aspire/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aspire/errors.hpp"

namespace aspire {

namespace {

std::vector<double> merged_knots(const Curve& a, const Curve& b) {
  auto k = a.knots();
  const auto kb = b.knots();
  k.insert(k.end(), kb.begin(), kb.end());
  return k;
}

void check_pair(const Curve& lottery, const Curve& utility, const char* op) {
  require_shared_domain(lottery, utility, op);
  if (lottery.is_step() && utility.is_step()) {
    throw UnsupportedError(std::string(op) + ": lottery and utility cannot both be steps");
  }
}

double step_at(const Curve& c) { return std::get<StepParams>(c.params()).at; }

}  // namespace

double expected_utility(const Curve& lottery, const Curve& utility,
                        const numerics::QuadratureSpec& spec) {
  check_pair(lottery, utility, "expected_utility");
  if (lottery.is_step()) return utility.value(step_at(lottery));
  if (utility.is_step()) return 1.0 - lottery.value(step_at(utility));
  const auto knots = merged_knots(lottery, utility);
  return numerics::integrate(
      [&](double x) { return lottery.density(x) * utility.value(x); }, lottery.domain().lo,
      lottery.domain().hi, spec, knots);
}

double expected_disutility(const Curve& lottery, const Curve& utility,
                           const numerics::QuadratureSpec& spec) {
  check_pair(lottery, utility, "expected_disutility");
  if (lottery.is_step()) return 1.0 - utility.value(step_at(lottery));
  if (utility.is_step()) return lottery.value(step_at(utility));
  const auto knots = merged_knots(lottery, utility);
  return numerics::integrate(
      [&](double x) { return utility.density(x) * lottery.value(x); }, lottery.domain().lo,
      lottery.domain().hi, spec, knots);
}

double certain_equivalent(const Curve& lottery, const Curve& utility,
                          const numerics::QuadratureSpec& spec) {
  if (utility.is_step()) {
    throw UnsupportedError("certain_equivalent: undefined for a step utility");
  }
  const double eu = expected_utility(lottery, utility, spec);
  return utility.quantile(std::clamp(eu, 0.0, 1.0));
}

double aspiration_equivalent(const Curve& lottery, const Curve& utility,
                             const numerics::QuadratureSpec& spec) {
  if (lottery.is_step()) {
    throw UnsupportedError("aspiration_equivalent: undefined for a step lottery");
  }
  const double edu = expected_disutility(lottery, utility, spec);
  return lottery.quantile(std::clamp(edu, 0.0, 1.0));
}

DualityResult evaluate_pair(const Curve& lottery, const Curve& utility,
                            const numerics::QuadratureSpec& spec) {
  if (utility.is_step()) throw UnsupportedError("evaluate_pair: step utility has no CE");
  if (lottery.is_step()) throw UnsupportedError("evaluate_pair: step lottery has no AE");
  DualityResult r{};
  r.expected_utility = expected_utility(lottery, utility, spec);
  r.expected_disutility = expected_disutility(lottery, utility, spec);
  r.certain_equivalent = utility.quantile(std::clamp(r.expected_utility, 0.0, 1.0));
  r.aspiration_equivalent = lottery.quantile(std::clamp(r.expected_disutility, 0.0, 1.0));
  return r;
}

double effective_gamma(const Curve& lottery, double target, const numerics::QuadratureSpec& spec) {
  if (lottery.is_step()) throw UnsupportedError("effective_gamma: step lottery");
  const Interval& d = lottery.domain();
  const double level = d.contains(target) ? lottery.value(target) : (target < d.lo ? 0.0 : 1.0);
  if (target <= d.lo || level <= 0.0) {
    std::ostringstream os;
    os << "effective_gamma: target " << target
       << " is at the lower bound of the lottery; only gamma -> +infinity reproduces it";
    throw LimitError(os.str());
  }
  if (target >= d.hi || level >= 1.0) {
    std::ostringstream os;
    os << "effective_gamma: target " << target
       << " is at the upper bound of the lottery; only gamma -> -infinity reproduces it";
    throw LimitError(os.str());
  }

  const double span = d.span();
  // EDU is nonincreasing in gamma, so the objective crosses zero exactly once.
  auto objective = [&](double gamma) {
    return expected_disutility(lottery, Curve::exponential_or_linear(d, gamma), spec) - level;
  };
  const double cap = kEffectiveGammaCap / span;
  double lo = -1.0 / span;
  double hi = 1.0 / span;
  double g_lo = objective(lo);
  double g_hi = objective(hi);
  while ((g_lo > 0.0) == (g_hi > 0.0) && g_lo != 0.0 && g_hi != 0.0) {
    if (g_hi > 0.0) {
      if (hi >= cap) break;
      lo = hi;
      g_lo = g_hi;
      hi = std::min(4.0 * hi, cap);
      g_hi = objective(hi);
    } else {
      if (lo <= -cap) break;
      hi = lo;
      g_hi = g_lo;
      lo = std::max(4.0 * lo, -cap);
      g_lo = objective(lo);
    }
  }
  if ((g_lo > 0.0) == (g_hi > 0.0) && g_lo != 0.0 && g_hi != 0.0) {
    std::ostringstream os;
    os << "effective_gamma: target " << target << " needs |gamma| (b - a) beyond "
       << kEffectiveGammaCap;
    throw UnattainableTarget(os.str());
  }
  return numerics::find_root(objective, {lo, hi, 1e-13});
}

}  // namespace aspire
