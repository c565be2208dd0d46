#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aspire/curves.hpp"
#include "aspire/numerics.hpp"

namespace aspire {

/// Scores closer than this are ties; ties go to the lowest index.
inline constexpr double kTieTolerance = 1e-9;

/// Index of the largest score, ties toward the lowest index.
std::size_t argmax_with_ties(std::span<const double> scores);

/// Index of the lottery with the highest expected utility.
std::size_t choose_by_eu(std::span<const Curve> lotteries, const Curve& utility,
                         const numerics::QuadratureSpec& spec = {});

struct AspirationChoice {
  std::size_t index;
  std::vector<double> targets;      // aspiration equivalent per lottery
  std::vector<double> exceedances;  // 1 - F_i(target_i)
};

/// The agent's choice when each lottery carries its aspiration equivalent as
/// the target and the agent maximizes the probability of exceeding it.
AspirationChoice choose_by_aspiration(std::span<const Curve> lotteries, const Curve& utility,
                                      const numerics::QuadratureSpec& spec = {});

struct TargetUpdate {
  Curve old_lottery;
  Curve new_lottery;
  double old_target;
  double effective_gamma;
  double new_target;
  double old_exceed_prob;
  double new_exceed_prob;
};

/// Holds the effective risk aversion of (old_lottery, old_target) fixed and
/// recomputes the aspiration equivalent on new_lottery.
TargetUpdate update_target(const Curve& old_lottery, double old_target, const Curve& new_lottery,
                           const numerics::QuadratureSpec& spec = {});

enum class TargetRule { fractile, certain_equivalent, aspiration_equivalent };

std::string to_string(TargetRule rule);

struct RuleOutcome {
  TargetRule rule;
  std::vector<double> targets;
  std::vector<double> exceedances;
  std::size_t agent_index;
  bool uses_utility;      // desideratum (i): the target can rank lotteries by preference
  bool agrees_with_principal;  // desideratum (ii)
};

struct DesiderataReport {
  std::size_t principal_index;
  std::vector<double> expected_utilities;
  std::vector<RuleOutcome> rules;  // fractile, certain equivalent, aspiration equivalent
};

/// For each target rule, the lottery an exceedance-maximizing agent picks,
/// compared with the principal's expected-utility choice.
DesiderataReport desiderata_report(std::span<const Curve> lotteries, const Curve& utility,
                                   double fractile = 0.5,
                                   const numerics::QuadratureSpec& spec = {});

/// A (two-lottery, utility) instance where the certain-equivalent target rule
/// disagrees with the principal.
struct CeRuleCounterexample {
  double alpha1, beta1;
  double alpha2, beta2;
  double gamma;
  std::size_t principal_index;
  std::size_t agent_index;
};

/// Scans scaled-beta pairs (shape parameters on an integer grid 1..max_shape)
/// against exponential utilities with the given gammas on the unit domain, in
/// lexicographic order, and returns the first disagreement whose exceedance
/// and EU gaps both exceed `margin`.
std::optional<CeRuleCounterexample> find_ce_rule_counterexample(
    std::span<const double> gammas, int max_shape = 6, double margin = 0.01,
    const numerics::QuadratureSpec& spec = {});

}  // namespace aspire
