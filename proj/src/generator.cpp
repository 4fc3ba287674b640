#include "levymart/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "levymart/errors.hpp"
#include "levymart/exponent.hpp"
#include "levymart/moments.hpp"

namespace levy {

ExpMix::ExpMix(double a, double lambda1, double b, double lambda2)
    : a_(a), l1_(lambda1), b_(b), l2_(lambda2) {
  if (!(a_ >= 0.0) || !(b_ >= 0.0) || !std::isfinite(a_) || !std::isfinite(b_)) {
    throw ValidationError("ExpMix weights must be finite and >= 0");
  }
  if (!std::isfinite(l1_) || !std::isfinite(l2_)) {
    throw ValidationError("ExpMix rates must be finite");
  }
  if (l1_ > l2_) {
    std::swap(a_, b_);
    std::swap(l1_, l2_);
  }
  if (l1_ == l2_) {
    a_ += b_;
    b_ = 0.0;
  }
}

double ExpMix::operator()(double x) const noexcept {
  return a_ * std::exp(l1_ * x) + b_ * std::exp(l2_ * x);
}

double ExpMix::derivative(double x) const noexcept {
  return a_ * l1_ * std::exp(l1_ * x) + b_ * l2_ * std::exp(l2_ * x);
}

double ExpMix::second_derivative(double x) const noexcept {
  return a_ * l1_ * l1_ * std::exp(l1_ * x) + b_ * l2_ * l2_ * std::exp(l2_ * x);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::martingale_function:
      return "martingale-function";
    case Verdict::not_martingale_function:
      return "not-martingale-function";
    case Verdict::trivial_process_indeterminate:
      return "trivial-process-indeterminate";
  }
  return "unknown";
}

namespace {

// w_k with A x^n = sum_k C(n, k) w_k x^{n-k}.
std::vector<double> generator_weights(const ProcessSpec& spec, int n,
                                      const QuadratureOptions& opts) {
  const LevyTriplet& tr = spec.triplet();
  const LevyMeasure& nu = tr.measure();
  for (int k = 1; k <= n; ++k) {
    if (!moment_finite(spec, k)) {
      throw InfiniteMomentError("A p needs the Levy measure moment of order " +
                                    std::to_string(k) + ", which is infinite",
                                k);
    }
  }
  std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    double w = 0.0;
    if (!nu.is_zero()) {
      w = measure_moments(nu, k, Region::outer, opts).value();
      if (k >= 2) w += measure_moments(nu, k, Region::inner, opts).value();
    }
    if (k == 1) w += tr.drift();
    if (k == 2) w += tr.sigma2();
    weight[static_cast<std::size_t>(k)] = w;
  }
  return weight;
}

std::vector<double> combine(const std::vector<double>& p, const std::vector<double>& weight) {
  const std::size_t n = p.empty() ? 0 : p.size() - 1;
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 1; m <= n; ++m) {
    if (p[m] == 0.0) continue;
    for (std::size_t k = 1; k <= m; ++k) {
      out[m - k] += p[m] * binomial(static_cast<int>(m), static_cast<int>(k)) * weight[k];
    }
  }
  return out;
}

}  // namespace

Polynomial apply_to_polynomial(const ProcessSpec& spec, const Polynomial& p,
                               const QuadratureOptions& opts) {
  const int n = p.degree();
  if (n <= 0) return {};
  return Polynomial(combine(p.coeffs(), generator_weights(spec, n, opts)));
}

double apply_to_exponential(const ProcessSpec& spec, double lambda,
                            const QuadratureOptions& opts) {
  const ExtendedReal eta = eval_laplace_exponent(spec, lambda, opts);
  if (!eta.finite()) {
    throw DomainError("rate " + std::to_string(lambda) +
                      " lies outside the exponential-moment domain");
  }
  return eta.value();
}

SmoothFunction SmoothFunction::from_values(std::function<double(double)> f, double h) {
  auto df = [f, h](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  auto d2f = [f, h](double x) { return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h); };
  return {f, df, d2f};
}

namespace {

// Integral over u in [0, 1] of (1 - u) f''(x + u y), 3-point Gauss-Legendre.
double taylor_remainder_over_y2(const SmoothFunction& f, double x, double y) {
  static constexpr double r = 0.7745966692414834;  // sqrt(3/5)
  static constexpr std::array<double, 3> nodes{0.5 * (1.0 - r), 0.5, 0.5 * (1.0 + r)};
  static constexpr std::array<double, 3> weights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) acc += weights[i] * (1.0 - nodes[i]) * f.d2f(x + nodes[i] * y);
  return acc;
}

}  // namespace

double apply_numeric(const ProcessSpec& spec, const SmoothFunction& f, double x,
                     const QuadratureOptions& opts) {
  const LevyTriplet& tr = spec.triplet();
  const LevyMeasure& nu = tr.measure();
  const double fx = f.f(x);
  const double dfx = f.df(x);
  double out = tr.drift() * dfx + 0.5 * tr.sigma2() * f.d2f(x);
  if (nu.is_zero()) return out;
  constexpr double kTaylorCutoff = 1e-2;
  const MeasureIntegrand inner{
      [&](double y) { return f.f(x + y) - fx - y * dfx; },
      [&](double y) {
        if (std::abs(y) < kTaylorCutoff) return taylor_remainder_over_y2(f, x, y);
        return (f.f(x + y) - fx - y * dfx) / (y * y);
      },
  };
  out += nu.integrate(inner, Band::inner(), opts);
  out += nu.integrate({[&](double y) { return f.f(x + y) - fx; }, {}}, Band::outer(), opts);
  if (!std::isfinite(out)) {
    throw ConvergenceError("apply_numeric: jump integral is not finite", out);
  }
  return out;
}

ClassificationVerdict classify_additive(const ProcessSpec& spec, const Polynomial& p, double tol,
                                        const QuadratureOptions& opts) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!spec.nontrivial()) {
    return {Verdict::trivial_process_indeterminate, 0.0, std::nullopt, std::nullopt, tol};
  }
  const int n = p.degree();
  if (n <= 0) return {Verdict::martingale_function, 0.0, std::nullopt, std::nullopt, tol};
  const std::vector<double> weight = generator_weights(spec, n, opts);
  const Polynomial ap(combine(p.coeffs(), weight));

  // Scale: largest coefficient A would produce with every term made positive.
  std::vector<double> abs_p(p.coeffs());
  for (double& v : abs_p) v = std::abs(v);
  std::vector<double> abs_w(weight);
  for (double& v : abs_w) v = std::abs(v);
  double scale = 1.0;
  for (double v : combine(abs_p, abs_w)) scale = std::max(scale, v);
  const double threshold = tol * scale;

  bool constant = true;
  for (std::size_t i = 1; i < ap.coeffs().size(); ++i) {
    if (std::abs(ap[i]) > threshold) constant = false;
  }
  if (constant) {
    return {Verdict::martingale_function, ap[0], std::nullopt, std::nullopt, threshold};
  }
  std::vector<double> w(ap.coeffs());
  w[0] = 0.0;
  return {Verdict::not_martingale_function, nan, Polynomial(std::move(w)), std::nullopt, threshold};
}

ClassificationVerdict classify_multiplicative(const ProcessSpec& spec, const ExpMix& g,
                                              double tol, const QuadratureOptions& opts) {
  if (g.is_zero()) throw ValidationError("classify_multiplicative: g must be positive");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double eta1 = apply_to_exponential(spec, g.lambda1(), opts);
  const double eta2 = apply_to_exponential(spec, g.lambda2(), opts);
  if (!spec.nontrivial()) {
    return {Verdict::trivial_process_indeterminate, 0.0, std::nullopt, std::nullopt, tol};
  }
  if (g.single()) {
    const double alpha = g.a() == 0.0 ? eta2 : eta1;
    return {Verdict::martingale_function, alpha, std::nullopt, std::nullopt, tol};
  }
  const double threshold = tol * std::max({1.0, std::abs(eta1), std::abs(eta2)});
  if (std::abs(eta1 - eta2) <= threshold) {
    return {Verdict::martingale_function, 0.5 * (eta1 + eta2), std::nullopt, std::nullopt,
            threshold};
  }
  return {Verdict::not_martingale_function, nan, std::nullopt, std::make_pair(eta1, eta2),
          threshold};
}

}  // namespace levy
