#include "aspire/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aspire/duality.hpp"
#include "aspire/errors.hpp"

namespace aspire {

namespace {

std::vector<double> certification_grid(const Curve& a, const Curve& b, int grid_points) {
  if (grid_points < 64) throw std::invalid_argument("dominance: grid_points must be >= 64");
  const Interval& d = a.domain();
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid_points) + 8);
  for (int i = 0; i < grid_points; ++i) {
    xs.push_back(i + 1 == grid_points ? d.hi : d.lo + d.span() * i / (grid_points - 1));
  }
  for (const Curve* c : {&a, &b}) {
    for (double k : c->knots()) xs.push_back(k);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

std::string dominance_phrase(const Curve& a) {
  return a.role_hint() == Role::lottery ? "stochastically dominates" : "utility-dominates";
}

DominanceVerdict first_order_dominates(const Curve& a, const Curve& b, int grid_points) {
  require_shared_domain(a, b, "first_order_dominates");
  DominanceVerdict v;
  double best_gap = kGridTolerance;
  for (double x : certification_grid(a, b, grid_points)) {
    const double diff = a.value(x) - b.value(x);
    v.max_violation = std::max(v.max_violation, diff);
    if (-diff > best_gap) {
      best_gap = -diff;
      v.strict_witness = x;
    }
  }
  v.dominates = v.max_violation <= kGridTolerance && v.strict_witness.has_value();
  return v;
}

DominanceVerdict second_order_dominates(const Curve& a, const Curve& b, int grid_points,
                                        const numerics::QuadratureSpec& spec) {
  require_shared_domain(a, b, "second_order_dominates");
  DominanceVerdict v;
  v.analog_derived = true;
  const auto xs = certification_grid(a, b, grid_points);
  auto diff = [&](double t) { return a.value(t) - b.value(t); };
  double running = 0.0;
  double best_gap = kGridTolerance;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    running += numerics::integrate(diff, xs[i - 1], xs[i], spec);
    v.max_violation = std::max(v.max_violation, running);
    if (-running > best_gap) {
      best_gap = -running;
      v.strict_witness = xs[i];
    }
  }
  v.dominates = v.max_violation <= kGridTolerance && v.strict_witness.has_value();
  return v;
}

ImplicationReport dominance_implications(const Curve& a, const Curve& b,
                                         std::span<const Curve> test_lotteries,
                                         const numerics::QuadratureSpec& spec) {
  const DominanceVerdict order = first_order_dominates(a, b);
  if (order.max_violation > kGridTolerance) {
    throw std::invalid_argument("dominance_implications: U_A <= U_B does not hold");
  }
  ImplicationReport out{};
  out.mean_a = density_moments(a, spec).mean;
  out.mean_b = density_moments(b, spec).mean;
  out.mean_margin = out.mean_a - out.mean_b;
  const double span = a.domain().span();
  out.holds = out.mean_margin >= -kImplicationTolerance * span;
  for (const auto& f : test_lotteries) {
    ImplicationRow r{};
    const DualityResult ra = evaluate_pair(f, a, spec);
    const DualityResult rb = evaluate_pair(f, b, spec);
    r.edu_a = ra.expected_disutility;
    r.edu_b = rb.expected_disutility;
    r.ae_a = ra.aspiration_equivalent;
    r.ae_b = rb.aspiration_equivalent;
    r.eu_a = ra.expected_utility;
    r.eu_b = rb.expected_utility;
    r.edu_margin = r.edu_a - r.edu_b;
    r.ae_margin = r.ae_a - r.ae_b;
    r.eu_margin = r.eu_b - r.eu_a;
    r.holds = r.edu_margin >= -kImplicationTolerance && r.eu_margin >= -kImplicationTolerance &&
              r.ae_margin >= -kImplicationTolerance * span;
    out.holds = out.holds && r.holds;
    out.rows.push_back(r);
  }
  return out;
}

ChainReport exponential_chain(double gamma_a, double gamma_b, const Curve& lottery,
                              const numerics::QuadratureSpec& spec, int grid_points) {
  if (!(gamma_a <= gamma_b)) throw std::invalid_argument("exponential_chain: needs gamma_a <= gamma_b");
  const Interval& d = lottery.domain();
  const Curve ua = Curve::exponential_or_linear(d, gamma_a);
  const Curve ub = Curve::exponential_or_linear(d, gamma_b);
  const DualityResult ra = evaluate_pair(lottery, ua, spec);
  const DualityResult rb = evaluate_pair(lottery, ub, spec);

  ChainReport out{};
  out.gamma_a = gamma_a;
  out.gamma_b = gamma_b;
  out.eu_a = ra.expected_utility;
  out.eu_b = rb.expected_utility;
  out.ae_a = ra.aspiration_equivalent;
  out.ae_b = rb.aspiration_equivalent;
  out.ce_a = ra.certain_equivalent;
  out.ce_b = rb.certain_equivalent;
  out.margins = {-first_order_dominates(ua, ub, grid_points).max_violation,
                 out.eu_b - out.eu_a, out.ae_a - out.ae_b, out.ce_a - out.ce_b};
  const double span = d.span();
  const std::array<double, 4> tolerance = {kGridTolerance, kImplicationTolerance,
                                           kImplicationTolerance * span,
                                           kImplicationTolerance * span};
  out.holds = true;
  for (std::size_t k = 0; k < 4; ++k) {
    out.links[k] = out.margins[k] >= -tolerance[k];
    out.holds = out.holds && out.links[k];
  }
  return out;
}

double first_moment_by_equal_areas(const Curve& utility, const numerics::QuadratureSpec& spec) {
  if (utility.is_step()) throw UnsupportedError("first_moment_by_equal_areas: step utility");
  const Interval& d = utility.domain();
  const auto knots = utility.knots();
  return d.hi - numerics::integrate([&](double x) { return utility.value(x); }, d.lo, d.hi, spec,
                                    knots);
}

bool has_concave_cdf(const Curve& lottery, int grid_points) {
  const Interval& d = lottery.domain();
  for (int i = 1; i + 1 < grid_points; ++i) {
    const double x = d.lo + d.span() * i / (grid_points - 1);
    double slope;
    try {
      slope = lottery.density_slope(x);
    } catch (const CurvatureError&) {
      continue;
    }
    if (slope > 0.0) return false;
  }
  return true;
}

}  // namespace aspire
