#pragma once

#include <functional>

namespace levy {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

namespace quad {

using Function = std::function<double(double)>;

// Integral of f over [a, b] (finite). Endpoint singularities are allowed; f is
// never evaluated at a or b. A positive `period` splits the interval into
// half-period panels for oscillatory integrands.
double finite(const Function& f, double a, double b, const QuadratureOptions& opts,
              double period = 0.0);

// Integral of f over [a, +inf).
double half_line(const Function& f, double a, const QuadratureOptions& opts);

// Integral of trig(xi*y) * h(y) over [a, +inf) where trig is cos or sin.
// h must be nonnegative and nonincreasing on [monotone_from, +inf); the
// truncation error past R is then bounded by 2 h(R) / |xi|.
double fourier_tail(const Function& h, double xi, double a, bool sine,
                    double monotone_from, const QuadratureOptions& opts);

}  // namespace quad
}  // namespace levy
