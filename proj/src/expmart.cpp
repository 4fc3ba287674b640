#include "levymart/expmart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "levymart/errors.hpp"
#include "levymart/exponent.hpp"

namespace levy {

namespace {

double shrink_toward_zero(double edge) { return edge - kEdgeShrink * edge; }

}  // namespace

RootReport solve_lambda(const ProcessSpec& spec, double alpha, double kappa_max,
                        const QuadratureOptions& opts) {
  if (!std::isfinite(alpha)) throw ValidationError("alpha must be finite");
  const Interval domain = exp_moment_domain(spec, kappa_max);
  if (!(domain.lo < 0.0 && domain.hi > 0.0)) {
    throw DomainError("exponential-moment domain is degenerate");
  }
  const auto eta_or_inf = [&](double l) {
    return eval_laplace_exponent(spec, l, opts).value_or(std::numeric_limits<double>::infinity());
  };
  std::vector<std::string> warnings;
  // Inside the domain eta is finite, but it can exceed the double range; pull
  // such edges in to the last representable point.
  const auto representable = [&](double edge) {
    if (std::isfinite(eta_or_inf(edge))) return edge;
    double inside = 0.0;
    double outside = edge;
    for (int i = 0; i < 200 && inside != outside; ++i) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      (std::isfinite(eta_or_inf(mid)) ? inside : outside) = mid;
    }
    warnings.push_back("eta overflows beyond " + std::to_string(inside) +
                       "; search limited to that point");
    return inside;
  };
  const double lo = representable(shrink_toward_zero(domain.lo));
  const double hi = representable(shrink_toward_zero(domain.hi));
  const auto eta = [&](double l) { return eval_laplace_exponent(spec, l, opts).value(); };

  // Golden-section search for the minimiser of the convex eta.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eta(c);
  double fd = eta(d);
  for (int i = 0; i < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eta(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eta(d);
    }
  }
  double star = 0.5 * (a + b);
  double eta_star = eta(star);
  // eta(0) = 0 exactly; prefer it when the search lands next to it.
  if (eta(0.0) <= eta_star) {
    star = 0.0;
    eta_star = 0.0;
  }
  const double width = hi - lo;
  const bool at_lo = star - lo <= 1e-9 * width;
  const bool at_hi = hi - star <= 1e-9 * width;
  if (at_lo) star = lo, eta_star = eta(lo);
  if (at_hi) star = hi, eta_star = eta(hi);

  RootReport r{alpha, {}, star, eta_star, domain, {lo, hi}, at_lo || at_hi, warnings};
  const double tol = kRootTolerance * std::max(1.0, std::abs(alpha));
  if (eta_star > alpha + tol) return r;
  if (std::abs(eta_star - alpha) <= tol) {
    r.roots.push_back(star);
    if (r.monotone) r.warnings.emplace_back("root lies at the edge of the searched domain");
    return r;
  }

  // Bisection on [from, to] where eta(from) < alpha.
  const auto bisect = [&](double from, double to) {
    const double f_to = eta(to);
    if (f_to < alpha - tol) {
      r.warnings.emplace_back("eta stays below alpha up to the domain edge " + std::to_string(to));
      return;
    }
    double inside = from;
    double outside = to;
    double root = to;
    if (std::abs(f_to - alpha) > tol) {
      for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (inside + outside);
        const double fm = eta(mid) - alpha;
        root = mid;
        if (fm == 0.0 || mid == inside || mid == outside) break;
        (fm < 0.0 ? inside : outside) = mid;
      }
    } else {
      r.warnings.emplace_back("root lies at the edge of the searched domain");
    }
    if (std::abs(eta(root) - alpha) > tol) {
      throw ConvergenceError("solve_lambda: bisection did not reach the residual tolerance",
                             std::abs(eta(root) - alpha));
    }
    r.roots.push_back(root);
  };
  if (star > lo) bisect(star, lo);
  if (star < hi) bisect(star, hi);
  std::sort(r.roots.begin(), r.roots.end());
  return r;
}

ExpMartingale build_exp_martingale(const RootReport& report, double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw ValidationError("weights a, b must be >= 0");
  if (a + b == 0.0) throw ValidationError("weights a, b must not both vanish");
  switch (report.roots.size()) {
    case 0:
      throw DomainError("eta(lambda) = alpha has no solution: only the trivial solution g = 0");
    case 1:
      if (b != 0.0) throw ValidationError("a single root admits only b = 0");
      return {ExpMix::exponential(report.roots[0], a), report.alpha};
    default:
      return {ExpMix(a, report.roots[0], b, report.roots[1]), report.alpha};
  }
}

}  // namespace levy
