#include "levymart/funceq.hpp"

#include <cmath>
#include <vector>

#include "levymart/errors.hpp"

namespace levy {

namespace {

void require_step(double y) {
  if (!(y != 0.0) || !std::isfinite(y)) throw ValidationError("step y must be finite and nonzero");
}

}  // namespace

FallingFactorialBasis::FallingFactorialBasis(double step, int order)
    : step_(step), order_(order), poly_{1.0} {
  require_step(step);
  if (order < 0) throw ValidationError("falling factorial order must be >= 0");
  for (int j = 0; j < order; ++j) poly_ = poly_ * Polynomial{-j * step, 1.0};
}

Polynomial difference(const Polynomial& q, double y) {
  require_step(y);
  std::vector<double> c = q.shifted(y).coeffs();
  c.resize(q.coeffs().size(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= q[i];
  // The leading coefficient cancels exactly; drop it so rounding cannot revive it.
  if (!c.empty()) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial frechet_solve(const Polynomial& p, double y) {
  require_step(y);
  const int n = p.degree();
  if (n < 0) return {};
  // Forward differences of p on the nodes 0, y, ..., n y.
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) d[static_cast<std::size_t>(i)] = p(i * y);
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    a[static_cast<std::size_t>(k)] = d[0] / (factorial * std::pow(y, k));
    for (int i = 0; i + 1 < static_cast<int>(d.size()) - k; ++i) {
      d[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i) + 1] - d[static_cast<std::size_t>(i)];
    }
  }
  // p = sum a_k x^{(k/y)} and x^{((k+1)/y)} has difference (k+1) y x^{(k/y)}.
  Polynomial q;
  for (int k = 0; k <= n; ++k) {
    q += (a[static_cast<std::size_t>(k)] / ((k + 1) * y)) * FallingFactorialBasis(y, k + 1).expanded();
  }
  return q;
}

GeneralSolutionCheck verify_general_solution(const Polynomial& q1, const Polynomial& q2, double y,
                                             double rel_tol) {
  require_step(y);
  if (!approx_equal(difference(q1, y), difference(q2, y), rel_tol)) return {true, true};
  const Polynomial gap = q1 - q2;
  const double scale = std::max({1.0, q1.max_abs(), q2.max_abs()});
  for (std::size_t i = 1; i < gap.coeffs().size(); ++i) {
    if (std::abs(gap[i]) > rel_tol * scale) return {false, false};
  }
  return {true, false};
}

}  // namespace levy
