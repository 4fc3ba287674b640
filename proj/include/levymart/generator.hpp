#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "levymart/polynomial.hpp"
#include "levymart/process.hpp"

namespace levy {

/// g(x) = a e^{lambda1 x} + b e^{lambda2 x} with a, b >= 0, stored with
/// lambda1 <= lambda2. Equal rates collapse to (a + b) e^{lambda1 x}.
class ExpMix {
 public:
  ExpMix(double a, double lambda1, double b, double lambda2);
  static ExpMix exponential(double lambda, double weight = 1.0) {
    return ExpMix(weight, lambda, 0.0, lambda);
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double lambda1() const noexcept { return l1_; }
  double lambda2() const noexcept { return l2_; }
  bool is_zero() const noexcept { return a_ == 0.0 && b_ == 0.0; }
  /// Only one exponential carries weight.
  bool single() const noexcept { return a_ == 0.0 || b_ == 0.0; }

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;
  double second_derivative(double x) const noexcept;

 private:
  double a_;
  double l1_;
  double b_;
  double l2_;
};

enum class Verdict { martingale_function, not_martingale_function, trivial_process_indeterminate };

std::string to_string(Verdict v);

struct ClassificationVerdict {
  Verdict verdict;
  /// Additive: A f == alpha. Multiplicative: the common eta value.
  /// NaN for negative verdicts.
  double alpha;
  /// Additive negative verdicts: nonconstant part of A p.
  std::optional<Polynomial> witness_poly;
  /// Multiplicative negative verdicts: (eta(lambda1), eta(lambda2)).
  std::optional<std::pair<double, double>> witness_eta;
  double tolerance_used;

  bool positive() const noexcept { return verdict == Verdict::martingale_function; }
};

inline constexpr double kClassifyTolerance = 1e-9;

/// A p in closed form:
///   A x^n = (b+M_1) n x^{n-1} + C(n,2)(sigma^2+m_2+M_2) x^{n-2}
///           + sum_{k>=3} C(n,k)(m_k+M_k) x^{n-k}.
/// Throws InfiniteMomentError if the measure lacks moments up to deg p.
Polynomial apply_to_polynomial(const ProcessSpec& spec, const Polynomial& p,
                               const QuadratureOptions& opts = {});

/// Eigenvalue eta(lambda) of A on e^{lambda x}. DomainError outside the
/// exponential-moment domain.
double apply_to_exponential(const ProcessSpec& spec, double lambda,
                            const QuadratureOptions& opts = {});

/// A C^2 test function with its first two derivatives.
struct SmoothFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;

  /// Derivatives by central differences with step h.
  static SmoothFunction from_values(std::function<double(double)> f, double h = 1e-4);
};

/// A f(x) from the integro-differential form by quadrature. Jumps with
/// |y| < 1 use the Taylor remainder f(x+y) - f(x) - y f'(x) integrated
/// against y^2 nu(dy); larger jumps enter directly.
double apply_numeric(const ProcessSpec& spec, const SmoothFunction& f, double x,
                     const QuadratureOptions& opts = {});

/// Martingale-function test for f = p: positive iff A p is constant, with
/// nonconstant coefficients compared against tol * max(1, scale).
ClassificationVerdict classify_additive(const ProcessSpec& spec, const Polynomial& p,
                                        double tol = kClassifyTolerance,
                                        const QuadratureOptions& opts = {});

/// Martingale-function test for g: positive iff eta(lambda1) == eta(lambda2)
/// within tol * max(1, |eta1|, |eta2|), or g is a single exponential.
ClassificationVerdict classify_multiplicative(const ProcessSpec& spec, const ExpMix& g,
                                              double tol = kClassifyTolerance,
                                              const QuadratureOptions& opts = {});

}  // namespace levy
