#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls the library's quadrature or root finder.

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aspire/curves.hpp"

namespace aspire::testing {

struct Named {
  std::string label;
  Curve curve;
};

/// Continuous lotteries on [0, 1] (eight of them, all with bounded densities).
inline std::vector<Named> lottery_catalog() {
  const Interval u{0.0, 1.0};
  return {
      {"uniform", Curve::uniform(u)},
      {"triangular", Curve::triangular(u)},
      {"triangular(0.3)", Curve::triangular(u, 0.3)},
      {"beta(2,8)", Curve::scaled_beta(u, 2, 8)},
      {"beta(4,8)", Curve::scaled_beta(u, 4, 8)},
      {"beta(2,3)", Curve::scaled_beta(u, 2, 3)},
      {"gaussian(0.4,0.15)", Curve::truncated_gaussian(u, 0.4, 0.15)},
      {"piecewise", Curve::piecewise_linear(u, {0.0, 0.2, 0.7, 1.0}, {0.0, 0.1, 0.8, 1.0})},
      {"exponential(2)", Curve::exponential(u, 2.0)},
  };
}

/// Continuous utilities on [0, 1], risk averse and risk seeking.
inline std::vector<Named> utility_catalog() {
  const Interval u{0.0, 1.0};
  return {
      {"linear", Curve::linear(u)},
      {"exp(3)", Curve::exponential(u, 3.0)},
      {"exp(9)", Curve::exponential(u, 9.0)},
      {"exp(-2)", Curve::exponential(u, -2.0)},
      {"log_wealth(0.1)", Curve::log_wealth(u, 0.1)},
      {"log_wealth(2)", Curve::log_wealth(u, 2.0)},
      {"beta(2,2)", Curve::scaled_beta(u, 2, 2)},
      {"triangular(0.7)", Curve::triangular(u, 0.7)},
      {"piecewise", Curve::piecewise_linear(u, {0.0, 0.4, 1.0}, {0.0, 0.7, 1.0})},
  };
}

/// Composite midpoint rule with n cells on each of the pieces between `cuts`.
inline double midpoint(const std::function<double(double)>& f, double a, double b, int n = 20000,
                       std::vector<double> cuts = {}) {
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s];
    const double hi = cuts[s + 1];
    if (!(hi > lo)) continue;
    const double h = (hi - lo) / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f(lo + (i + 0.5) * h);
    total += acc * h;
  }
  return total;
}

/// Regularized incomplete beta for integer shapes as a binomial tail sum.
inline double beta_cdf_binomial(double x, int a, int b) {
  const int n = a + b - 1;
  double total = 0.0;
  for (int j = a; j <= n; ++j) {
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0)) *
             std::pow(x, j) * std::pow(1.0 - x, n - j);
  }
  return total;
}

/// Plain bisection on a sign change, to machine resolution.
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Closed-form normalized exponential utility, written out independently.
inline double exp_utility(double x, double gamma, double a, double b) {
  return (1.0 - std::exp(-gamma * (x - a))) / (1.0 - std::exp(-gamma * (b - a)));
}

}  // namespace aspire::testing
