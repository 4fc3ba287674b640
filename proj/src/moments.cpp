#include "levymart/moments.hpp"

#include <cmath>
#include <string>

#include "levymart/errors.hpp"
#include "levymart/exponent.hpp"

namespace levy {

bool moment_finite(const ProcessSpec& spec, int n) {
  if (n < 0) throw ValidationError("moment_finite: n must be >= 0");
  if (n == 0) return true;
  return spec.triplet().measure().abs_moment_finite(n, Band::outer());
}

std::vector<double> cumulants(const ProcessSpec& spec, int n, const QuadratureOptions& opts) {
  if (n < 0) throw ValidationError("cumulants: n must be >= 0");
  const LevyTriplet& tr = spec.triplet();
  const LevyMeasure& nu = tr.measure();
  for (int j = 1; j <= n; ++j) {
    if (!nu.abs_moment_finite(j, Band::outer())) {
      throw InfiniteMomentError("Levy measure moment of order " + std::to_string(j) +
                                    " over |y| >= 1 is infinite",
                                j);
    }
  }
  std::vector<double> kappa(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j <= n; ++j) {
    double k = 0.0;
    if (!nu.is_zero()) {
      k = measure_moments(nu, j, Region::outer, opts).value();
      if (j >= 2) k += measure_moments(nu, j, Region::inner, opts).value();
    }
    if (j == 1) k += tr.drift();
    if (j == 2) k += tr.sigma2();
    kappa[static_cast<std::size_t>(j - 1)] = k;
  }
  return kappa;
}

std::vector<Polynomial> moments_from_cumulants(const std::vector<double>& kappa) {
  const std::size_t n = kappa.size();
  std::vector<Polynomial> mu(n + 1);
  mu[0] = Polynomial{1.0};
  for (std::size_t m = 1; m <= n; ++m) {
    Polynomial acc;
    for (std::size_t j = 1; j <= m; ++j) {
      // c_j = t kappa_j
      const Polynomial c_j = Polynomial::monomial(1, kappa[j - 1]);
      acc += binomial(static_cast<int>(m - 1), static_cast<int>(j - 1)) * (c_j * mu[m - j]);
    }
    mu[m] = acc;
  }
  return mu;
}

std::vector<Polynomial> cumulants_from_moments(const std::vector<Polynomial>& mu) {
  std::vector<Polynomial> c(mu.size());
  for (std::size_t m = 1; m < mu.size(); ++m) {
    Polynomial acc = mu[m];
    for (std::size_t j = 1; j < m; ++j) {
      acc -= binomial(static_cast<int>(m - 1), static_cast<int>(j - 1)) * (c[j] * mu[m - j]);
    }
    c[m] = acc;
  }
  return c;
}

Polynomial moment_polynomial(const ProcessSpec& spec, int n, const QuadratureOptions& opts) {
  if (n < 0) throw ValidationError("moment_polynomial: n must be >= 0");
  return moments_from_cumulants(cumulants(spec, n, opts)).back();
}

Interval exp_moment_domain(const ProcessSpec& spec, double kappa_max) {
  if (!(kappa_max > 0.0)) throw ValidationError("exp_moment_domain: kappa_max must be > 0");
  const LevyMeasure& nu = spec.triplet().measure();
  // Same divergence predicate eval_laplace_exponent uses for its infinite flag.
  const auto finite = [&nu](double lambda) { return nu.exp_moment_finite(lambda); };
  const auto edge = [&](double direction) {
    if (finite(direction * kappa_max)) return direction * kappa_max;
    double good = 0.0;
    double bad = kappa_max;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (good + bad);
      if (mid == good || mid == bad) break;
      (finite(direction * mid) ? good : bad) = mid;
    }
    // No finite point away from 0: the domain collapses to {0}.
    return good == 0.0 ? 0.0 : direction * bad;
  };
  return {edge(-1.0), edge(1.0)};
}

BiPolynomial semigroup_on_polynomial(const ProcessSpec& spec, const Polynomial& p,
                                     const QuadratureOptions& opts) {
  const int n = p.degree();
  if (n < 0) return {};
  const std::vector<Polynomial> mu = moments_from_cumulants(cumulants(spec, n, opts));
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<double>> grid(size, std::vector<double>(size, 0.0));
  // E p(x + X_t) = sum_k p_k sum_j C(k, j) x^{k-j} mu_j(t)
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= k; ++j) {
      const double w = p[static_cast<std::size_t>(k)] * binomial(k, j);
      const auto& muj = mu[static_cast<std::size_t>(j)].coeffs();
      for (std::size_t tp = 0; tp < muj.size(); ++tp) {
        grid[static_cast<std::size_t>(k - j)][tp] += w * muj[tp];
      }
    }
  }
  return BiPolynomial(std::move(grid));
}

}  // namespace levy
