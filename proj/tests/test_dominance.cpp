#include <doctest.h>

#include <random>

#include "aspire/dominance.hpp"
#include "aspire/errors.hpp"
#include "support.hpp"

using namespace aspire;
using aspire::testing::lottery_catalog;
using aspire::testing::utility_catalog;

namespace {

// Running trapezoid integral of A - B on a fine grid; returns its maximum and minimum.
std::pair<double, double> trapezoid_extremes(const Curve& a, const Curve& b, int n = 200000) {
  const auto& d = a.domain();
  const double h = d.span() / n;
  double run = 0.0;
  double hi = 0.0;
  double lo = 0.0;
  double prev = a.value(d.lo) - b.value(d.lo);
  for (int i = 1; i <= n; ++i) {
    const double x = i == n ? d.hi : d.lo + i * h;
    const double cur = a.value(x) - b.value(x);
    run += 0.5 * h * (prev + cur);
    prev = cur;
    hi = std::max(hi, run);
    lo = std::min(lo, run);
  }
  return {hi, lo};
}

}  // namespace

TEST_CASE("first-order dominance") {
  const Interval unit{0, 1};
  const auto a = Curve::exponential(unit, 3.0);
  const auto b = Curve::exponential(unit, 6.0);
  const auto v = first_order_dominates(a, b);
  CHECK(v.dominates);
  REQUIRE(v.strict_witness.has_value());
  CHECK(b.value(*v.strict_witness) - a.value(*v.strict_witness) > 1e-9);
  CHECK(v.max_violation <= 1e-9);
  CHECK_FALSE(v.analog_derived);

  const auto back = first_order_dominates(b, a);
  CHECK_FALSE(back.dominates);
  CHECK(back.max_violation > 0.1);

  const auto same = first_order_dominates(a, a);
  CHECK_FALSE(same.dominates);
  CHECK_FALSE(same.strict_witness.has_value());
  CHECK(same.max_violation == 0.0);

  CHECK(dominance_phrase(a.with_role(Role::utility)) == "utility-dominates");
  CHECK(dominance_phrase(a.with_role(Role::lottery)) == "stochastically dominates");
  CHECK_THROWS_AS(first_order_dominates(a, Curve::linear({0, 2})), DomainError);
  CHECK_THROWS_AS(first_order_dominates(a, b, 10), std::invalid_argument);
}

TEST_CASE("first-order dominance sees knots between grid points") {
  const Interval unit{0, 1};
  // A exceeds B only on [0.5, 0.5003], narrower than the 64-point grid spacing.
  const auto b = Curve::linear(unit);
  const auto a = Curve::piecewise_linear(unit, {0.0, 0.5, 0.5001, 0.5003, 1.0},
                                         {0.0, 0.49, 0.5003, 0.5003, 1.0});
  const auto v = first_order_dominates(a, b, 64);
  CHECK_FALSE(v.dominates);
  CHECK(v.max_violation == doctest::Approx(0.5003 - 0.5001).epsilon(1e-9));
}

TEST_CASE("second-order analog against a trapezoid oracle") {
  const Interval unit{0, 1};
  SUBCASE("S-shaped curve versus linear") {
    const auto s = Curve::scaled_beta(unit, 2, 2);
    const auto lin = Curve::linear(unit);
    CHECK_FALSE(first_order_dominates(s, lin).dominates);
    const auto v = second_order_dominates(s, lin);
    const auto [hi, lo] = trapezoid_extremes(s, lin);
    CHECK(v.analog_derived);
    CHECK(v.dominates == (hi <= 1e-9 && lo < -1e-9));
    CHECK(v.dominates);
    CHECK_FALSE(second_order_dominates(lin, s).dominates);
  }
  SUBCASE("crossing utilities") {
    const auto a = Curve::scaled_beta(unit, 2, 2);
    const auto b = Curve::exponential(unit, -1.0);
    REQUIRE_FALSE(first_order_dominates(a, b).dominates);
    REQUIRE_FALSE(first_order_dominates(b, a).dominates);
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      const auto v = second_order_dominates(x, y);
      const auto [hi, lo] = trapezoid_extremes(x, y);
      CHECK(v.dominates == (hi <= 1e-9 && lo < -1e-9));
      CHECK(v.max_violation == doctest::Approx(std::max(hi, 0.0)).epsilon(1e-6));
    }
  }
  SUBCASE("equal curves") {
    CHECK_FALSE(second_order_dominates(Curve::linear(unit), Curve::linear(unit)).dominates);
  }
}

TEST_CASE("first order implies second order") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gamma(-6.0, 6.0);
  std::uniform_real_distribution<double> unit01(0.05, 0.95);
  const Interval unit{0, 1};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    double y1 = unit01(rng);
    double y2 = unit01(rng);
    const auto a = trial % 2 ? Curve::exponential_or_linear(unit, gamma(rng))
                             : Curve::piecewise_linear(unit, {0, 0.5, 1}, {0, y1, 1});
    const auto b = trial % 2 ? Curve::exponential_or_linear(unit, gamma(rng))
                             : Curve::piecewise_linear(unit, {0, 0.3, 1}, {0, y2, 1});
    if (first_order_dominates(a, b, 256).dominates) {
      CHECK(second_order_dominates(a, b, 256).dominates);
      ++checked;
    }
  }
  CHECK(checked > 5);
}

TEST_CASE("dominance implications over the catalog") {
  const auto us = utility_catalog();
  std::vector<Curve> lotteries;
  for (const auto& f : lottery_catalog()) lotteries.push_back(f.curve);
  int pairs = 0;
  for (const auto& a : us) {
    for (const auto& b : us) {
      if (!first_order_dominates(a.curve, b.curve, 512).dominates) continue;
      CAPTURE(a.label);
      CAPTURE(b.label);
      const auto rep = dominance_implications(a.curve, b.curve, lotteries);
      CHECK(rep.holds);
      CHECK(rep.mean_margin >= -2e-9);
      for (const auto& row : rep.rows) {
        CHECK(row.edu_margin >= -2e-9);
        CHECK(row.ae_margin >= -2e-9);
        CHECK(row.eu_margin >= -2e-9);
      }
      ++pairs;
    }
  }
  CHECK(pairs >= 10);
}

TEST_CASE("log wealth: more wealth, less curvature") {
  const Interval unit{0, 1};
  const auto rich = Curve::log_wealth(unit, 10.0);
  const auto poor = Curve::log_wealth(unit, 1.0);
  CHECK(first_order_dominates(rich, poor).dominates);
  std::vector<Curve> lotteries;
  for (const auto& f : lottery_catalog()) lotteries.push_back(f.curve);
  CHECK(dominance_implications(rich, poor, lotteries).holds);
  CHECK_THROWS_AS(dominance_implications(poor, rich, lotteries), std::invalid_argument);
}

TEST_CASE("equal utilities give zero margins") {
  const Interval unit{0, 1};
  const auto u = Curve::exponential(unit, 2.0);
  const std::vector<Curve> lotteries{Curve::scaled_beta(unit, 2, 5)};
  const auto rep = dominance_implications(u, u, lotteries);
  CHECK(rep.rows[0].edu_margin == 0.0);
  CHECK(rep.rows[0].ae_margin == 0.0);
  CHECK(rep.rows[0].eu_margin == 0.0);
}

TEST_CASE("exponential chain") {
  const double gammas[] = {-8, -3, -0.5, 0, 0.5, 3, 8};
  for (const auto& [label, f] : lottery_catalog()) {
    CAPTURE(label);
    for (double ga : gammas) {
      for (double gb : gammas) {
        if (!(ga < gb)) continue;
        const auto c = exponential_chain(ga, gb, f);
        CHECK(c.holds);
        for (double m : c.margins) CHECK(m >= -2e-9);
      }
    }
  }
  CHECK_THROWS_AS(exponential_chain(3, 1, Curve::uniform({0, 1})), std::invalid_argument);
}

TEST_CASE("equal-areas first moment") {
  for (const auto& [label, u] : utility_catalog()) {
    CAPTURE(label);
    CHECK(first_moment_by_equal_areas(u) == doctest::Approx(density_moments(u).mean).epsilon(1e-8));
  }
  CHECK(first_moment_by_equal_areas(Curve::linear({0, 1})) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(first_moment_by_equal_areas(Curve::exponential({0, 1}, 5.0)) ==
        doctest::Approx(0.193).epsilon(1e-3));
  CHECK_THROWS_AS(first_moment_by_equal_areas(Curve::step({0, 1}, 0.4)), UnsupportedError);
}

TEST_CASE("concave cumulative distributions") {
  const Interval unit{0, 1};
  CHECK(has_concave_cdf(Curve::scaled_beta(unit, 1, 3)));
  CHECK(has_concave_cdf(Curve::exponential(unit, 2.0)));
  CHECK(has_concave_cdf(Curve::uniform(unit)));
  CHECK_FALSE(has_concave_cdf(Curve::scaled_beta(unit, 2, 3)));
  CHECK_FALSE(has_concave_cdf(Curve::triangular(unit)));
}

TEST_CASE("utility dominance orders EDU on concave lotteries") {
  const Interval unit{0, 1};
  const std::vector<Curve> concave{Curve::scaled_beta(unit, 1, 3), Curve::exponential(unit, 2.0),
                                   Curve::truncated_gaussian(unit, 0.0, 0.4)};
  for (const auto& f : concave) REQUIRE(has_concave_cdf(f));
  const auto a = Curve::scaled_beta(unit, 2, 2);
  const auto b = Curve::linear(unit);
  REQUIRE(second_order_dominates(a, b).dominates);
  for (const auto& f : concave) {
    const double edu_a = 1.0 - [&] {
      return aspire::testing::midpoint([&](double x) { return f.density(x) * a.value(x); }, 0, 1);
    }();
    const double edu_b = 1.0 - [&] {
      return aspire::testing::midpoint([&](double x) { return f.density(x) * b.value(x); }, 0, 1);
    }();
    CHECK(edu_a >= edu_b - 2e-9);
  }
}
