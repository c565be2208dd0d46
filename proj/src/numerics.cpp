#include "aspire/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aspire/errors.hpp"

namespace aspire::numerics {

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be strictly positive");
  }
  if (max_subdivision_depth < 1) {
    throw std::invalid_argument("quadrature depth must be at least 1");
  }
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kInitialPanels = 8;

struct SimpsonState {
  const RealFn& f;
  double error = 0.0;
  bool converged = true;
  bool finite = true;
};

// f at an endpoint may be an integrable singularity; step inside by a hair.
double eval_endpoint(const RealFn& f, double x, double inward) {
  double v = f(x);
  if (std::isfinite(v)) return v;
  return f(x + inward);
}

double simpson_panel(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;

  if (!std::isfinite(delta)) {
    st.finite = false;
    st.error = std::numeric_limits<double>::infinity();
    return left + right;
  }
  const bool resolved = std::abs(delta) <= 15.0 * tol ||
                        std::abs(delta) <= 64.0 * kEps * std::abs(left + right) ||
                        !(lm > a && rm < b);
  if (resolved || depth <= 0) {
    if (!resolved) st.converged = false;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_panel(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_panel(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_regular(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                         std::span<const double> knots) {

  std::vector<double> cuts{a};
  for (double k : knots) {
    if (k > a && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Initial panels and a coarse estimate that fixes the global tolerance.
  struct Panel {
    double a, b, fa, fm, fb, whole;
  };
  std::vector<Panel> panels;
  const double inward = (b - a) * 1e-13;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s];
    const double hi = cuts[s + 1];
    const double h = (hi - lo) / kInitialPanels;
    // One-sided limits at interior knots, where piecewise integrands jump.
    const double nudge = (hi - lo) * 1e-12;
    const bool first = s == 0;
    const bool last = s + 2 == cuts.size();
    double x0 = lo;
    double f0 = first ? eval_endpoint(f, lo, inward) : f(lo + nudge);
    for (int p = 0; p < kInitialPanels; ++p) {
      const bool end = p + 1 == kInitialPanels;
      const double x1 = end ? hi : lo + (p + 1) * h;
      const double f1 = !end ? f(x1) : last ? eval_endpoint(f, hi, -inward) : f(hi - nudge);
      const double xm = 0.5 * (x0 + x1);
      const double fm = f(xm);
      panels.push_back({x0, x1, f0, fm, f1, (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1)});
      x0 = x1;
      f0 = f1;
    }
  }
  double coarse = 0.0;
  for (const auto& p : panels) coarse += p.whole;
  const double tol = std::max(spec.relative_tolerance * std::abs(coarse), spec.absolute_tolerance);

  SimpsonState st{f};
  double total = 0.0;
  for (const auto& p : panels) {
    const double share = tol * (p.b - p.a) / (b - a);
    total += simpson_panel(st, p.a, p.b, p.fa, p.fm, p.fb, p.whole, share,
                           spec.max_subdivision_depth);
  }
  // Leaves cut off at the depth limit are fine when their summed error still
  // meets the global tolerance (endpoint kinks such as x^0.3 end up there).
  if (!st.finite || !std::isfinite(total) || (!st.converged && st.error > tol)) {
    std::ostringstream os;
    os << "integrate: no convergence on [" << a << ", " << b << "] within depth "
       << spec.max_subdivision_depth << " (estimate " << total << ", error bound " << st.error
       << ")";
    throw QuadratureError(os.str(), total, st.error);
  }
  return total;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec,
                 std::span<const double> knots) {
  spec.validate();
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return 0.0;

  const bool singular_lo = !std::isfinite(f(a));
  const bool singular_hi = !std::isfinite(f(b));
  if (!singular_lo && !singular_hi) return integrate_regular(f, a, b, spec, knots);

  // Peel off the end pieces and substitute x = end +- w s^2 there, which turns
  // x^-p singularities with p < 1 into bounded or milder integrands.
  double inner_lo = 0.5 * (a + b);
  double inner_hi = inner_lo;
  for (double k : knots) {
    if (k > a && k < b) {
      inner_lo = std::min(inner_lo, k);
      inner_hi = std::max(inner_hi, k);
    }
  }
  if (!singular_lo) inner_lo = a;
  if (!singular_hi) inner_hi = b;

  double total = 0.0;
  if (singular_lo) {
    const double w = inner_lo - a;
    const double inside = std::nextafter(a, b);
    total += integrate_regular(
        [&](double s) { return 2.0 * w * s * f(std::max(a + w * s * s, inside)); }, 0.0, 1.0, spec,
        {});
  }
  if (inner_hi > inner_lo) total += integrate_regular(f, inner_lo, inner_hi, spec, knots);
  if (singular_hi) {
    const double w = b - inner_hi;
    const double inside = std::nextafter(b, a);
    total += integrate_regular(
        [&](double s) { return 2.0 * w * s * f(std::min(b - w * s * s, inside)); }, 0.0, 1.0, spec,
        {});
  }
  return total;
}

double find_root(const RealFn& g, const RootBracket& bracket) {
  double a = bracket.lo;
  double b = bracket.hi;
  if (!(a < b)) throw std::invalid_argument("find_root: bracket requires lo < hi");
  const double tol = bracket.value_tolerance;
  double fa = g(a);
  double fb = g(b);
  if (std::abs(fa) <= tol) return a;
  if (std::abs(fb) <= tol) return b;
  if (!(std::isfinite(fa) && std::isfinite(fb)) || (fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "find_root: no sign change on [" << a << ", " << b << "]: g(lo) = " << fa
       << ", g(hi) = " << fb;
    throw BracketError(os.str(), fa, fb);
  }

  // Brent's method with b the current best estimate and [b, c] a sign-changing bracket.
  const double floor = 1e-15 * (b - a);
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 300; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double resolution = 2.0 * kEps * std::abs(b) + floor;
    const double half = 0.5 * (c - b);
    if (std::abs(fb) <= tol || std::abs(half) <= resolution || fb == 0.0) return b;

    if (std::abs(e) >= resolution && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double bound1 = 3.0 * half * q - std::abs(resolution * q);
      const double bound2 = std::abs(e * q);
      if (2.0 * p < std::min(bound1, bound2)) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > resolution) ? d : std::copysign(resolution, half);
    fb = g(b);
  }
  return b;
}

double central_difference(const RealFn& f, double x, double h, const Interval& domain) {
  if (!(h > 0.0)) throw std::invalid_argument("central_difference: step must be positive");
  const bool left_ok = x - h >= domain.lo;
  const bool right_ok = x + h <= domain.hi;
  if (left_ok && right_ok) return (f(x + h) - f(x - h)) / (2.0 * h);
  if (right_ok && x + 2.0 * h <= domain.hi) {
    return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  }
  if (left_ok && x - 2.0 * h >= domain.lo) {
    return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
  }
  throw std::invalid_argument("central_difference: step too large for the domain");
}

std::vector<double> cumulants_from_moments(std::span<const double> raw_moments) {
  const std::size_t n = raw_moments.empty() ? 0 : raw_moments.size() - 1;
  std::vector<double> kappa(n + 1, 0.0);
  for (std::size_t r = 1; r <= n; ++r) {
    double acc = raw_moments[r];
    double binom = 1.0;  // C(r-1, j-1), starting at j = 1
    for (std::size_t j = 1; j < r; ++j) {
      acc -= binom * kappa[j] * raw_moments[r - j];
      binom = binom * static_cast<double>(r - 1 - (j - 1)) / static_cast<double>(j);
    }
    kappa[r] = acc;
  }
  return kappa;
}

std::vector<double> cumulants(const RealFn& density, double a, double b, int order,
                              const QuadratureSpec& spec, std::span<const double> knots) {
  if (order < 1 || order > 8) throw std::invalid_argument("cumulants: order must be in [1, 8]");
  const double mass = integrate(density, a, b, spec, knots);
  if (std::abs(mass - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "cumulants: density integrates to " << mass << ", not 1";
    throw NormalizationError(os.str(), mass);
  }
  const double mean = integrate([&](double x) { return x * density(x); }, a, b, spec, knots);

  std::vector<double> moments(static_cast<std::size_t>(order) + 1, 0.0);
  moments[0] = 1.0;
  for (int k = 2; k <= order; ++k) {
    moments[static_cast<std::size_t>(k)] = integrate(
        [&](double x) { return std::pow(x - mean, k) * density(x); }, a, b, spec, knots);
  }
  auto kappa = cumulants_from_moments(moments);
  kappa[1] = mean;
  return {kappa.begin() + 1, kappa.end()};
}

}  // namespace aspire::numerics
