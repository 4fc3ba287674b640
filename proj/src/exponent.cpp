#include "levymart/exponent.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "levymart/errors.hpp"

namespace levy {
namespace {

// (x - sin x) / x^3 without cancellation.
double x_minus_sin_over_x3(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.1) {
    return 1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0 - x2 * x2 * x2 / 362880.0;
  }
  return (x - std::sin(x)) / (x2 * x);
}

// (e^x - 1 - x) / x^2 without cancellation.
double expm1_minus_x_over_x2(double x) {
  if (std::abs(x) < 1e-2) {
    return 0.5 + x / 6.0 + x * x / 24.0 + x * x * x / 120.0 + x * x * x * x / 720.0;
  }
  return (std::expm1(x) - x) / (x * x);
}

double half_sinc_sq(double y, double xi) {
  // 2 sin^2(y xi / 2) / y^2 = (1 - cos(y xi)) / y^2
  const double h = 0.5 * y * xi;
  if (h == 0.0) return 0.5 * xi * xi;
  const double s = std::sin(h) / h;
  return 0.5 * xi * xi * s * s;
}

// Outer (|y| >= 1) part of the jump integral of psi.
std::complex<double> outer_jump_exponent(const LevyMeasure& nu, double xi,
                                         const QuadratureOptions& opts) {
  double re = 0.0;
  double im = 0.0;
  for (const Atom& a : nu.atoms()) {
    if (std::abs(a.location) < 1.0) continue;
    re += a.mass * 2.0 * std::pow(std::sin(0.5 * a.location * xi), 2);
    im -= a.mass * std::sin(a.location * xi);
  }
  const double period = 2.0 * std::numbers::pi / std::abs(xi);
  for (const DensityPiece& p : nu.pieces()) {
    for (const auto& [a, b] : p.clip(1.0, kInf)) {
      if (a != -kInf && b != kInf) {
        re += quad::finite(
            [&](double y) { return 2.0 * std::pow(std::sin(0.5 * y * xi), 2) * p.density(y); },
            a, b, opts, period);
        im -= quad::finite([&](double y) { return std::sin(y * xi) * p.density(y); }, a, b,
                           opts, period);
        continue;
      }
      // Unbounded: reflect the negative side onto [start, inf).
      const bool positive = b == kInf;
      const double start = positive ? a : -b;
      const quad::Function h = [&p, positive](double u) {
        return p.density(positive ? u : -u);
      };
      const double mass = quad::half_line(h, start, opts);
      const double cos_part = quad::fourier_tail(h, xi, start, false, p.monotone_from(), opts);
      const double sin_part = quad::fourier_tail(h, xi, start, true, p.monotone_from(), opts);
      re += mass - cos_part;
      im -= positive ? sin_part : -sin_part;
    }
  }
  return {re, im};
}

// Upper incomplete gamma for any real s, x > 0.
double upper_gamma(double s, double x) {
  if (s > 0.0) return boost::math::tgamma(s, x);
  if (s == 0.0) return boost::math::expint(1, x);
  return (upper_gamma(s + 1.0, x) - std::pow(x, s) * std::exp(-x)) / s;
}

// int_a^inf u^{-p} e^{-r u} du for a > 0, r >= 0. Rescaling to unit rate keeps
// slowly decaying tails (r near 0) out of the quadrature.
double power_exp_tail(double p, double r, double a) {
  if (r == 0.0) return std::pow(a, 1.0 - p) / (p - 1.0);
  return std::pow(r, p - 1.0) * upper_gamma(1.0 - p, r * a);
}

// log Phi(x), with the asymptotic series far in the left tail where erfc
// underflows.
double log_norm_cdf(double x) {
  if (x == -kInf) return -kInf;
  if (x > -37.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  const double r = 1.0 / (x * x);
  const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log(series);
}

// log P(lo < Z < hi) for a standard normal Z.
double log_norm_interval(double lo, double hi) {
  if (lo >= 0.0) return log_norm_interval(-hi, -lo);
  if (hi <= 0.0) {
    const double lh = log_norm_cdf(hi);
    return lh + std::log1p(-std::exp(log_norm_cdf(lo) - lh));
  }
  return std::log1p(-0.5 * std::erfc(-lo / std::numbers::sqrt2) -
                    0.5 * std::erfc(hi / std::numbers::sqrt2));
}

// int_a^b e^{lambda y} rate N(mean, sd^2)(dy), computed in log space.
double gaussian_exp_integral(const DensityPiece& p, double lambda, double a, double b) {
  const double shift = p.mean() + lambda * p.sd() * p.sd();
  const double log_p = log_norm_interval((a - shift) / p.sd(), (b - shift) / p.sd());
  return p.scale() *
         std::exp(lambda * p.mean() + 0.5 * lambda * lambda * p.sd() * p.sd() + log_p);
}

// int_{|y| >= 1} (e^{lambda y} - 1) nu(dy), given a finite value.
double outer_laplace(const LevyMeasure& nu, double lambda, const QuadratureOptions& opts) {
  double total = 0.0;
  for (const Atom& a : nu.atoms()) {
    if (std::abs(a.location) >= 1.0) total += a.mass * std::expm1(lambda * a.location);
  }
  for (const DensityPiece& p : nu.pieces()) {
    if (p.kind() == DensityPiece::Kind::tempered && p.unbounded()) {
      for (const auto& [a, b] : p.clip(1.0, kInf)) {
        const double start = p.positive_side() ? a : -b;
        if (a != -kInf && b != kInf) {
          const LevyMeasure one({}, {p});
          total += one.integrate(
              {[lambda](double y) { return std::expm1(lambda * y); }, {}},
              Band{start, std::max(std::abs(a), std::abs(b))}, opts);
          continue;
        }
        const double tilted = p.rate() - (p.positive_side() ? lambda : -lambda);
        total += p.scale() * (power_exp_tail(p.power(), tilted, start) -
                              power_exp_tail(p.power(), p.rate(), start));
      }
      continue;
    }
    if (p.kind() == DensityPiece::Kind::gaussian) {
      for (const auto& [a, b] : p.clip(1.0, kInf)) {
        total += gaussian_exp_integral(p, lambda, a, b) - gaussian_exp_integral(p, 0.0, a, b);
      }
      continue;
    }
    const LevyMeasure one({}, {p});
    total += one.integrate({[lambda](double y) { return std::expm1(lambda * y); },
                            {},
                            0.0,
                            [lambda](double y) { return lambda * y; },
                            {}},
                           Band::outer(), opts);
  }
  return total;
}

}  // namespace

std::complex<double> eval_exponent(const ProcessSpec& spec, double xi,
                                   const QuadratureOptions& opts) {
  if (!std::isfinite(xi)) throw ValidationError("eval_exponent: xi must be finite");
  if (xi == 0.0) return {0.0, 0.0};
  const LevyTriplet& tr = spec.triplet();
  const LevyMeasure& nu = tr.measure();
  double re = 0.5 * tr.sigma2() * xi * xi;
  double im = -tr.drift() * xi;
  if (!nu.is_zero()) {
    const double period = 2.0 * std::numbers::pi / std::abs(xi);
    re += nu.integrate({[xi](double y) { return 2.0 * std::pow(std::sin(0.5 * y * xi), 2); },
                        [xi](double y) { return half_sinc_sq(y, xi); }, period},
                       Band::inner(), opts);
    im += nu.integrate(
        {[xi](double y) { return y * xi - std::sin(y * xi); },
         [xi](double y) { return xi * xi * xi * y * x_minus_sin_over_x3(y * xi); }, period},
        Band::inner(), opts);
    const std::complex<double> outer = outer_jump_exponent(nu, xi, opts);
    re += outer.real();
    im += outer.imag();
  }
  return {re, im};
}

ExtendedReal eval_laplace_exponent(const ProcessSpec& spec, double lambda,
                                   const QuadratureOptions& opts) {
  if (std::isnan(lambda)) throw ValidationError("eval_laplace_exponent: lambda is NaN");
  if (lambda == 0.0) return 0.0;
  const LevyTriplet& tr = spec.triplet();
  const LevyMeasure& nu = tr.measure();
  if (!std::isfinite(lambda)) {
    if (nu.is_zero() && tr.sigma2() == 0.0) {
      const double v = tr.drift() * lambda;
      if (std::isnan(v)) return 0.0;
      if (v == kInf) return ExtendedReal::divergent();
      return v;
    }
    return ExtendedReal::divergent();
  }
  if (!nu.exp_moment_finite(lambda)) return ExtendedReal::divergent();

  double eta = tr.drift() * lambda + 0.5 * tr.sigma2() * lambda * lambda;
  if (!nu.is_zero()) {
    eta += nu.integrate({[lambda](double y) { return std::expm1(lambda * y) - lambda * y; },
                         [lambda](double y) {
                           return lambda * lambda * expm1_minus_x_over_x2(lambda * y);
                         }},
                        Band::inner(), opts);
    eta += outer_laplace(nu, lambda, opts);
  }
  if (!std::isfinite(eta)) return ExtendedReal::divergent();
  return eta;
}

ExtendedReal measure_moments(const LevyMeasure& measure, int k, Region region,
                             const QuadratureOptions& opts, bool absolute) {
  if (k < 1) throw ValidationError("measure_moments: k must be >= 1");
  const Band band = band_of(region);
  if (!measure.abs_moment_finite(k, band)) return ExtendedReal::divergent();
  const auto sign = [k, absolute](double y) {
    return (absolute || y > 0.0 || k % 2 == 0) ? 1.0 : -1.0;
  };
  const MeasureIntegrand f{
      [sign, k](double y) { return sign(y) * std::pow(std::abs(y), k); },
      [sign, k](double y) { return sign(y) * std::pow(std::abs(y), k - 2); },
      0.0,
      [k](double y) { return k * std::log(std::abs(y)); },
      [k](double y) { return (k - 2) * std::log(std::abs(y)); },
  };
  return measure.integrate(f, band, opts);
}

std::string to_string(SupportClass s) {
  switch (s) {
    case SupportClass::full_line:
      return "full-line";
    case SupportClass::half_line:
      return "half-line";
    case SupportClass::lattice:
      return "lattice";
    case SupportClass::degenerate:
      return "degenerate";
  }
  return "full-line";
}

double zero_truncation_drift(const LevyTriplet& triplet, const QuadratureOptions& opts) {
  const LevyMeasure& nu = triplet.measure();
  if (nu.activity() == ActivityClass::infinite_infinite_variation) {
    throw DomainError("zero-truncation drift undefined for infinite-variation jump parts");
  }
  return triplet.drift() - measure_moments(nu, 1, Region::inner, opts).value();
}

namespace {

// Largest h > 0 with a, b in h Z up to a relative tolerance, or 0 if none.
double real_gcd(double a, double b, double tol) {
  a = std::abs(a);
  b = std::abs(b);
  if (a < b) std::swap(a, b);
  while (b > tol) {
    double r = std::fmod(a, b);
    if (r > b - tol) r = 0.0;
    a = b;
    b = r;
  }
  return a > tol ? a : 0.0;
}

bool on_lattice(double x, double h, double tol) {
  const double q = x / h;
  return std::abs(q - std::round(q)) * h <= tol;
}

}  // namespace

SupportClass support_class(const ProcessSpec& spec, const QuadratureOptions& opts) {
  const LevyTriplet& tr = spec.triplet();
  if (tr.trivial()) return SupportClass::degenerate;
  const LevyMeasure& nu = tr.measure();

  if (tr.sigma2() == 0.0 && nu.pieces().empty() && !nu.atoms().empty()) {
    double scale = 0.0;
    for (const Atom& a : nu.atoms()) scale = std::max(scale, std::abs(a.location));
    const double tol = 1e-9 * scale;
    double h = std::abs(nu.atoms().front().location);
    for (const Atom& a : nu.atoms()) {
      h = real_gcd(h, a.location, tol);
      if (h == 0.0) break;
    }
    if (h > 0.0) {
      const double drift = zero_truncation_drift(tr, opts);
      if (on_lattice(drift, h, 1e-9 * std::max(h, std::abs(drift)))) return SupportClass::lattice;
    }
  }

  if (tr.sigma2() == 0.0 && nu.supported_on_positive() &&
      nu.activity() != ActivityClass::infinite_infinite_variation &&
      zero_truncation_drift(tr, opts) >= 0.0) {
    return SupportClass::half_line;
  }
  return SupportClass::full_line;
}

std::vector<double> scan_exponent_zeros(const ProcessSpec& spec, double xi_max, int points,
                                        double tol, const QuadratureOptions& opts) {
  if (!(xi_max > 0.0) || points < 3) {
    throw ValidationError("scan_exponent_zeros: need xi_max > 0 and points >= 3");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  std::vector<double> mag(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = xi_max * static_cast<double>(i + 1) / static_cast<double>(points);
    mag[i] = std::abs(eval_exponent(spec, grid[i], opts));
  }
  std::vector<double> zeros;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left = i == 0 || mag[i] <= mag[i - 1];
    const bool right = i + 1 == grid.size() || mag[i] <= mag[i + 1];
    if (left && right && mag[i] <= tol) zeros.push_back(grid[i]);
  }
  return zeros;
}

}  // namespace levy
