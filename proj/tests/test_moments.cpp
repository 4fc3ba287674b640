#include <gtest/gtest.h>

#include <cmath>

#include "levymart/catalog.hpp"
#include "levymart/errors.hpp"
#include "levymart/moments.hpp"

using namespace levy;

namespace {

ProcessSpec cp(LevyMeasure nu) {
  return ProcessSpec(LevyTriplet(0.0, 0.0, std::move(nu)), SamplerKind::compound_poisson);
}

void expect_coeffs(const Polynomial& p, std::vector<double> want, double tol) {
  ASSERT_LE(p.coeffs().size(), want.size()) << p;
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(p[i], want[i], tol) << "coeff " << i;
}

}  // namespace

TEST(Polynomial, TrimsNegligibleTrailingCoefficients) {
  const Polynomial p{1.0, 2.0, 1e-14};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(Polynomial{}.degree(), -1);
  EXPECT_EQ(Polynomial({0.0, 0.0}).degree(), -1);
  EXPECT_EQ(Polynomial({1e-13, 0.0}).degree(), -1);
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a{1.0, 1.0};
  const Polynomial b{-1.0, 1.0};
  EXPECT_EQ(a * b, Polynomial({-1.0, 0.0, 1.0}));
  EXPECT_EQ(a + b, Polynomial({0.0, 2.0}));
  EXPECT_EQ(a - a, Polynomial{});
  EXPECT_EQ((a * a).shifted(-1.0), Polynomial({0.0, 0.0, 1.0}));
  EXPECT_EQ(Polynomial({3.0, 2.0, 1.0}).derivative(), Polynomial({2.0, 2.0}));
  EXPECT_DOUBLE_EQ(Polynomial({1.0, -3.0, 2.0})(2.0), 3.0);
}

TEST(Cumulants, Examples) {
  const auto bm = cumulants(catalog_process("brownian"), 4);
  expect_coeffs(Polynomial(bm), {0.0, 1.0, 0.0, 0.0}, 1e-15);

  const auto two = cumulants(cp(LevyMeasure({{-1.0, 0.5}, {1.0, 0.5}}, {})), 4);
  ASSERT_EQ(two.size(), 4U);
  EXPECT_NEAR(two[0], 0.0, 1e-15);
  EXPECT_NEAR(two[1], 1.0, 1e-15);
  EXPECT_NEAR(two[2], 0.0, 1e-15);
  EXPECT_NEAR(two[3], 1.0, 1e-15);

  const auto gm = cumulants(catalog_process("gamma"), 3);
  EXPECT_NEAR(gm[0], 1.0, 1e-10);
  EXPECT_NEAR(gm[1], 1.0, 1e-10);
  EXPECT_NEAR(gm[2], 2.0, 1e-10);
}

TEST(Cumulants, InfiniteMomentNamesFirstFailingOrder) {
  const auto spec = catalog_process("pareto-tail");
  try {
    (void)cumulants(spec, 4);
    FAIL() << "expected InfiniteMomentError";
  } catch (const InfiniteMomentError& e) {
    EXPECT_EQ(e.order(), 2);
  }
  EXPECT_NO_THROW((void)cumulants(spec, 1));
}

TEST(MomentPolynomial, Examples) {
  const auto bm = catalog_process("brownian");
  expect_coeffs(moment_polynomial(bm, 4), {0.0, 0.0, 3.0}, 1e-12);
  EXPECT_EQ(moment_polynomial(bm, 1).degree(), -1);
  for (const auto& name : all_catalog_names()) {
    EXPECT_EQ(moment_polynomial(catalog_process(name), 0), Polynomial{1.0}) << name;
  }
}

TEST(MomentPolynomial, GammaMomentsAreRisingFactorials) {
  // X_t ~ Gamma(t, 1): E X_t^3 = t (t+1) (t+2).
  expect_coeffs(moment_polynomial(catalog_process("gamma"), 3), {0.0, 2.0, 3.0, 1.0}, 1e-9);
}

TEST(MomentPolynomial, DegreeAndValueAtZero) {
  for (const auto& name : default_catalog_names()) {
    const auto spec = catalog_process(name);
    for (int n = 1; n <= 8; ++n) {
      const Polynomial q = moment_polynomial(spec, n);
      EXPECT_LE(q.degree(), n) << name;
      EXPECT_NEAR(q(0.0), 0.0, 1e-14) << name;
    }
  }
}

TEST(MomentPolynomial, CumulantRoundTrip) {
  for (const auto& name : default_catalog_names()) {
    const auto kappa = cumulants(catalog_process(name), 8);
    const auto back = cumulants_from_moments(moments_from_cumulants(kappa));
    for (std::size_t j = 1; j <= kappa.size(); ++j) {
      const double scale = std::max(1.0, std::abs(kappa[j - 1]));
      EXPECT_NEAR(back[j][1], kappa[j - 1], 1e-12 * scale) << name << " j=" << j;
      EXPECT_LE(back[j].degree(), 1) << name << " j=" << j;
    }
  }
}

TEST(MomentFinite, Examples) {
  const auto tail = catalog_process("pareto-tail");
  EXPECT_TRUE(moment_finite(tail, 1));
  EXPECT_FALSE(moment_finite(tail, 2));
  EXPECT_TRUE(moment_finite(catalog_process("brownian"), 50));
  EXPECT_TRUE(moment_finite(cp(LevyMeasure({{5.0, 1.0}}, {})), 100));
  EXPECT_TRUE(moment_finite(tail, 0));
}

TEST(ExpMomentDomain, Examples) {
  const Interval bm = exp_moment_domain(catalog_process("brownian"));
  EXPECT_EQ(bm.lo, -kDefaultKappaMax);
  EXPECT_EQ(bm.hi, kDefaultKappaMax);

  const Interval gm = exp_moment_domain(catalog_process("gamma"));
  EXPECT_EQ(gm.lo, -kDefaultKappaMax);
  EXPECT_NEAR(gm.hi, 1.0, 1e-14);

  const auto sym = cp(LevyMeasure({}, {DensityPiece::tempered(1.0, 0.0, 1.0, -kInf, -1.0),
                                       DensityPiece::tempered(1.0, 0.0, 1.0, 1.0, kInf)}));
  const Interval d = exp_moment_domain(sym);
  EXPECT_NEAR(d.lo, -1.0, 1e-14);
  EXPECT_NEAR(d.hi, 1.0, 1e-14);

  const Interval capped = exp_moment_domain(catalog_process("brownian"), 3.0);
  EXPECT_EQ(capped.hi, 3.0);
}

TEST(Semigroup, Examples) {
  const auto bm = catalog_process("brownian");
  const BiPolynomial sq = semigroup_on_polynomial(bm, Polynomial{0.0, 0.0, 1.0});
  EXPECT_EQ(sq.coeff(2, 0), 1.0);
  EXPECT_EQ(sq.coeff(0, 1), 1.0);
  EXPECT_EQ(sq.coeff(1, 0), 0.0);
  const BiPolynomial cube = semigroup_on_polynomial(bm, Polynomial{0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(cube.coeff(3, 0), 1.0);
  EXPECT_EQ(cube.coeff(1, 1), 3.0);
  EXPECT_EQ(cube.x_degree(), 3);
  EXPECT_EQ(cube.t_degree(), 1);
  for (const auto& name : all_catalog_names()) {
    const BiPolynomial one = semigroup_on_polynomial(catalog_process(name), Polynomial{1.0});
    EXPECT_EQ(one.x_degree(), 0) << name;
    EXPECT_EQ(one.t_degree(), 0) << name;
    EXPECT_EQ(one.coeff(0, 0), 1.0) << name;
  }
}

TEST(Semigroup, EqualsPAtTimeZero) {
  const Polynomial p{1.0, -2.0, 0.5, 3.0, -1.0};
  for (const auto& name : default_catalog_names()) {
    EXPECT_TRUE(approx_equal(semigroup_on_polynomial(catalog_process(name), p).at_time(0.0), p,
                             1e-14))
        << name;
  }
}

TEST(Semigroup, SemigroupProperty) {
  const Polynomial p{0.5, -1.0, 2.0, 0.3, -0.7, 0.1};
  for (const auto& name : default_catalog_names()) {
    const auto spec = catalog_process(name);
    for (const auto& [t1, t2] : {std::pair{0.3, 0.9}, std::pair{1.7, 0.25}}) {
      const Polynomial inner = semigroup_on_polynomial(spec, p).at_time(t2);
      const Polynomial twice = semigroup_on_polynomial(spec, inner).at_time(t1);
      const Polynomial once = semigroup_on_polynomial(spec, p).at_time(t1 + t2);
      EXPECT_TRUE(approx_equal(twice, once, 1e-10)) << name << ": " << twice << " vs " << once;
    }
  }
}
