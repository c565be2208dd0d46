#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aspire/curves.hpp"
#include "aspire/numerics.hpp"

namespace aspire {

/// Gap size separating a real difference from grid or quadrature noise.
inline constexpr double kGridTolerance = 1e-9;

/// Margin below zero still accepted when checking dominance consequences.
inline constexpr double kImplicationTolerance = 2e-9;

/// A dominates B when A <= B everywhere on the certification grid (up to
/// kGridTolerance) with a strict gap somewhere. For utilities this reads "A
/// utility-dominates B"; for lotteries "A stochastically dominates B".
struct DominanceVerdict {
  bool dominates = false;
  std::optional<double> strict_witness;
  double max_violation = 0.0;
  /// Set for the second-order test, whose condition is the dual analog of
  /// second-order stochastic dominance rather than a formula taken as given.
  bool analog_derived = false;
};

/// "utility-dominates" or "stochastically dominates", picked from A's role hint.
std::string dominance_phrase(const Curve& a);

/// Pointwise test A(x) <= B(x) on `grid_points` evenly spaced points plus all knots.
DominanceVerdict first_order_dominates(const Curve& a, const Curve& b, int grid_points = 2048);

/// Integrated analog: D(x) = integral_a^x (A - B) dt <= 0 for all grid x, strict somewhere.
DominanceVerdict second_order_dominates(const Curve& a, const Curve& b, int grid_points = 2048,
                                        const numerics::QuadratureSpec& spec = {});

struct ImplicationRow {
  double edu_a, edu_b;
  double ae_a, ae_b;
  double eu_a, eu_b;
  double edu_margin;  // EDU_A - EDU_B, expected >= 0
  double ae_margin;   // AE_A - AE_B, expected >= 0
  double eu_margin;   // EU_B - EU_A, expected >= 0
  bool holds;
};

struct ImplicationReport {
  double mean_a;
  double mean_b;
  double mean_margin;  // mean_A - mean_B, expected >= 0
  std::vector<ImplicationRow> rows;  // one per test lottery
  bool holds;
};

/// Consequences of utility dominance of A over B for every test lottery:
/// higher expected disutility, higher aspiration equivalent, lower expected
/// utility, and a higher utility-density mean. Requires U_A <= U_B on the grid
/// (std::invalid_argument otherwise).
ImplicationReport dominance_implications(const Curve& a, const Curve& b,
                                         std::span<const Curve> test_lotteries,
                                         const numerics::QuadratureSpec& spec = {});

/// For exponential utilities with gamma_a <= gamma_b:
/// U_A <= U_B  =>  EU_A <= EU_B  =>  AE_A >= AE_B  =>  CE_A >= CE_B.
struct ChainReport {
  double gamma_a;
  double gamma_b;
  double eu_a, eu_b;
  double ae_a, ae_b;
  double ce_a, ce_b;
  /// Link margins in chain order; each is expected to be >= 0.
  std::array<double, 4> margins;
  std::array<bool, 4> links;
  bool holds;
};

ChainReport exponential_chain(double gamma_a, double gamma_b, const Curve& lottery,
                              const numerics::QuadratureSpec& spec = {}, int grid_points = 2048);

/// Mean of the utility density as b - integral of U (the equal-areas construction).
double first_moment_by_equal_areas(const Curve& utility, const numerics::QuadratureSpec& spec = {});

/// True when the lottery's density is nonincreasing on the grid (a concave CDF).
bool has_concave_cdf(const Curve& lottery, int grid_points = 2048);

}  // namespace aspire
