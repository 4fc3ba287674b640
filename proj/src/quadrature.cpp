#include "levymart/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "levymart/errors.hpp"

namespace levy::quad {
namespace {

constexpr std::size_t kMaxPanels = 2'000'000;
// Boost stops once successive levels agree to the requested tolerance, and
// that difference overstates the error. Ask for more than we check.
constexpr double kInnerTighten = 1e-2;

double inner_tol(const QuadratureOptions& opts) {
  return std::max(opts.rel_tol * kInnerTighten, 1e-15);
}

void check(const char* where, double err, double l1, const QuadratureOptions& opts) {
  const double target = std::max(opts.rel_tol * l1, opts.abs_tol);
  if (!(err <= target) || !std::isfinite(err)) {
    std::ostringstream os;
    os << where << ": quadrature did not converge (achieved error " << err
       << ", requested " << target << ")";
    throw ConvergenceError(os.str(), err);
  }
}

struct Partial {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

Partial tanh_sinh_panel(const Function& f, double a, double b, const QuadratureOptions& opts) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  Partial out;
  try {
    out.value = integrator.integrate(f, a, b, inner_tol(opts), &out.error, &out.l1);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("tanh-sinh quadrature failed: ") + e.what(),
                           std::numeric_limits<double>::infinity());
  }
  return out;
}

Partial kronrod_panel(const Function& f, double a, double b, const QuadratureOptions& opts) {
  Partial out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 12, inner_tol(opts), &out.error, &out.l1);
  return out;
}

}  // namespace

double finite(const Function& f, double a, double b, const QuadratureOptions& opts,
              double period) {
  if (a == b) return 0.0;
  if (a > b) return -finite(f, b, a, opts, period);
  const double step = period > 0.0 ? 0.5 * period : 0.0;
  if (step <= 0.0 || b - a <= step) {
    const Partial p = tanh_sinh_panel(f, a, b, opts);
    check("finite", p.error, p.l1, opts);
    return p.value;
  }
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / step));
  if (panels > kMaxPanels) {
    throw ConvergenceError("finite: oscillation too fast for panel quadrature",
                           std::numeric_limits<double>::infinity());
  }
  Partial total;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + static_cast<double>(k) * step;
    const double hi = (k + 1 == panels) ? b : a + static_cast<double>(k + 1) * step;
    // Only the end panels can carry endpoint singularities.
    const Partial p = (k == 0 || k + 1 == panels) ? tanh_sinh_panel(f, lo, hi, opts)
                                                  : kronrod_panel(f, lo, hi, opts);
    total.value += p.value;
    total.error += p.error;
    total.l1 += p.l1;
  }
  check("finite", total.error, total.l1, opts);
  return total.value;
}

double half_line(const Function& f, double a, const QuadratureOptions& opts) {
  boost::math::quadrature::exp_sinh<double> integrator;
  Partial out;
  try {
    out.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(),
                                     inner_tol(opts), &out.error, &out.l1);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("exp-sinh quadrature failed: ") + e.what(),
                           std::numeric_limits<double>::infinity());
  }
  check("half_line", out.error, out.l1, opts);
  return out.value;
}

double fourier_tail(const Function& h, double xi, double a, bool sine,
                    double monotone_from, const QuadratureOptions& opts) {
  if (xi == 0.0) {
    if (sine) return 0.0;
    return half_line(h, a, opts);
  }
  const double w = std::abs(xi);
  const double step = std::numbers::pi / w;
  const Function g = sine ? Function([&](double y) { return std::sin(xi * y) * h(y); })
                          : Function([&](double y) { return std::cos(xi * y) * h(y); });

  // Panel boundaries sit on the zeros of the trigonometric factor.
  const double offset = sine ? 0.0 : 0.5 * step;
  double lo = a;
  double hi = offset + step * (std::floor((a - offset) / step) + 1.0);
  Partial total;
  for (std::size_t k = 0; k < kMaxPanels; ++k) {
    // Past the first panel both ends are zeros, so the factor is +-sin(w u)
    // with u measured from lo. Avoids roundoff in sin at large arguments.
    const double sign = g(lo + 0.5 * (hi - lo)) < 0.0 ? -1.0 : 1.0;
    const double base = lo;
    const Partial p = k == 0 ? kronrod_panel(g, lo, hi, opts)
                             : kronrod_panel(
                                   [&](double u) { return sign * std::sin(w * u) * h(base + u); },
                                   0.0, hi - lo, opts);
    total.value += p.value;
    total.error += p.error;
    total.l1 += p.l1;
    lo = hi;
    hi += step;
    if (lo >= monotone_from) {
      const double bound = 2.0 * h(lo) / w;
      const double target = 0.5 * std::max(opts.rel_tol * total.l1, opts.abs_tol);
      if (bound <= target) {
        check("fourier_tail", total.error + bound, total.l1, opts);
        return total.value;
      }
    }
  }
  const double bound = 2.0 * h(lo) / w;
  throw ConvergenceError("fourier_tail: truncation bound not reached", bound);
}

}  // namespace levy::quad
