#include "aspire/delegation.hpp"

#include <cmath>
#include <stdexcept>

#include "aspire/duality.hpp"

namespace aspire {

namespace {

void require_nonempty(std::span<const Curve> lotteries, const char* op) {
  if (lotteries.empty()) throw std::invalid_argument(std::string(op) + ": empty lottery list");
}

double exceedance(const Curve& lottery, double target) { return 1.0 - lottery.value(target); }

}  // namespace

std::size_t argmax_with_ties(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("argmax_with_ties: empty score list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best] + kTieTolerance) best = i;
  }
  return best;
}

std::size_t choose_by_eu(std::span<const Curve> lotteries, const Curve& utility,
                         const numerics::QuadratureSpec& spec) {
  require_nonempty(lotteries, "choose_by_eu");
  std::vector<double> eu;
  eu.reserve(lotteries.size());
  for (const auto& f : lotteries) eu.push_back(expected_utility(f, utility, spec));
  return argmax_with_ties(eu);
}

AspirationChoice choose_by_aspiration(std::span<const Curve> lotteries, const Curve& utility,
                                      const numerics::QuadratureSpec& spec) {
  require_nonempty(lotteries, "choose_by_aspiration");
  AspirationChoice out{};
  for (const auto& f : lotteries) {
    const double t = aspiration_equivalent(f, utility, spec);
    out.targets.push_back(t);
    out.exceedances.push_back(exceedance(f, t));
  }
  out.index = argmax_with_ties(out.exceedances);
  return out;
}

TargetUpdate update_target(const Curve& old_lottery, double old_target, const Curve& new_lottery,
                           const numerics::QuadratureSpec& spec) {
  require_shared_domain(old_lottery, new_lottery, "update_target");
  const double gamma = effective_gamma(old_lottery, old_target, spec);
  const Curve utility = Curve::exponential_or_linear(old_lottery.domain(), gamma);
  const double new_target = aspiration_equivalent(new_lottery, utility, spec);
  return TargetUpdate{old_lottery,
                      new_lottery,
                      old_target,
                      gamma,
                      new_target,
                      exceedance(old_lottery, old_target),
                      exceedance(new_lottery, new_target)};
}

std::string to_string(TargetRule rule) {
  switch (rule) {
    case TargetRule::fractile: return "fractile";
    case TargetRule::certain_equivalent: return "certain_equivalent";
    case TargetRule::aspiration_equivalent: return "aspiration_equivalent";
  }
  return "unknown";
}

DesiderataReport desiderata_report(std::span<const Curve> lotteries, const Curve& utility,
                                   double fractile, const numerics::QuadratureSpec& spec) {
  if (lotteries.size() < 2) {
    throw std::invalid_argument("desiderata_report: needs at least two lotteries");
  }
  if (!(fractile > 0.0 && fractile < 1.0)) {
    throw std::invalid_argument("desiderata_report: fractile must lie in (0, 1)");
  }
  DesiderataReport report{};
  for (const auto& f : lotteries) report.expected_utilities.push_back(expected_utility(f, utility, spec));
  report.principal_index = argmax_with_ties(report.expected_utilities);

  for (auto rule : {TargetRule::fractile, TargetRule::certain_equivalent,
                    TargetRule::aspiration_equivalent}) {
    RuleOutcome o{rule, {}, {}, 0, rule != TargetRule::fractile, false};
    for (const auto& f : lotteries) {
      double t = 0.0;
      switch (rule) {
        case TargetRule::fractile: t = f.quantile(fractile); break;
        case TargetRule::certain_equivalent: t = certain_equivalent(f, utility, spec); break;
        case TargetRule::aspiration_equivalent: t = aspiration_equivalent(f, utility, spec); break;
      }
      o.targets.push_back(t);
      o.exceedances.push_back(exceedance(f, t));
    }
    o.agent_index = argmax_with_ties(o.exceedances);
    o.agrees_with_principal = o.agent_index == report.principal_index;
    report.rules.push_back(std::move(o));
  }
  return report;
}

std::optional<CeRuleCounterexample> find_ce_rule_counterexample(
    std::span<const double> gammas, int max_shape, double margin,
    const numerics::QuadratureSpec& spec) {
  const Interval unit{0.0, 1.0};
  for (double gamma : gammas) {
    const Curve utility = Curve::exponential_or_linear(unit, gamma);
    for (int a1 = 1; a1 <= max_shape; ++a1) {
      for (int b1 = 1; b1 <= max_shape; ++b1) {
        for (int a2 = a1; a2 <= max_shape; ++a2) {
          for (int b2 = 1; b2 <= max_shape; ++b2) {
            if (a2 == a1 && b2 <= b1) continue;
            const Curve f1 = Curve::scaled_beta(unit, a1, b1);
            const Curve f2 = Curve::scaled_beta(unit, a2, b2);
            const double eu1 = expected_utility(f1, utility, spec);
            const double eu2 = expected_utility(f2, utility, spec);
            const double ex1 = exceedance(f1, certain_equivalent(f1, utility, spec));
            const double ex2 = exceedance(f2, certain_equivalent(f2, utility, spec));
            if (std::abs(eu1 - eu2) <= margin || std::abs(ex1 - ex2) <= margin) continue;
            const std::size_t principal = eu2 > eu1 ? 1 : 0;
            const std::size_t agent = ex2 > ex1 ? 1 : 0;
            if (principal != agent) {
              return CeRuleCounterexample{double(a1), double(b1), double(a2), double(b2),
                                          gamma,      principal,  agent};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace aspire
