#pragma once

#include <vector>

#include "levymart/polynomial.hpp"
#include "levymart/process.hpp"

namespace levy {

/// kappa_1..kappa_n from the triplet: kappa_1 = b + M_1,
/// kappa_2 = sigma^2 + m_2 + M_2, kappa_j = m_j + M_j for j >= 3.
/// Throws InfiniteMomentError naming the first order whose outer moment diverges.
std::vector<double> cumulants(const ProcessSpec& spec, int n, const QuadratureOptions& opts = {});

/// E[X_t^n] as a polynomial in t.
Polynomial moment_polynomial(const ProcessSpec& spec, int n, const QuadratureOptions& opts = {});

/// mu_0(t), ..., mu_n(t) given kappa_1..kappa_n, through the moment-cumulant
/// recursion mu_n = sum_j C(n-1, j-1) t kappa_j mu_{n-j}.
std::vector<Polynomial> moments_from_cumulants(const std::vector<double>& kappa);

/// Inverse recursion: recovers the cumulant polynomials c_j(t) = t kappa_j
/// from mu_0..mu_n.
std::vector<Polynomial> cumulants_from_moments(const std::vector<Polynomial>& mu);

/// E|X_t|^n < inf for all t, decided from the tail of the Lévy measure.
bool moment_finite(const ProcessSpec& spec, int n);

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const noexcept { return x > lo && x < hi; }
};

inline constexpr double kDefaultKappaMax = 50.0;

/// Maximal open interval around 0 on which the Laplace exponent is finite,
/// capped at (-kappa_max, kappa_max).
Interval exp_moment_domain(const ProcessSpec& spec, double kappa_max = kDefaultKappaMax);

/// T_t p(x) = E p(x + X_t) as an exact polynomial in (x, t).
BiPolynomial semigroup_on_polynomial(const ProcessSpec& spec, const Polynomial& p,
                                     const QuadratureOptions& opts = {});

}  // namespace levy
