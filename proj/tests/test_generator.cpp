#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "levymart/catalog.hpp"
#include "levymart/errors.hpp"
#include "levymart/generator.hpp"
#include "levymart/moments.hpp"

using namespace levy;

namespace {

std::vector<ProcessSpec> finite_moment_catalog() {
  std::vector<ProcessSpec> out;
  for (const auto& name : all_catalog_names()) {
    auto spec = catalog_process(name);
    if (moment_finite(spec, 6)) out.push_back(std::move(spec));
  }
  return out;
}

SmoothFunction poly_fn(const Polynomial& p) {
  const Polynomial d1 = p.derivative();
  const Polynomial d2 = d1.derivative();
  return {[p](double x) { return p(x); }, [d1](double x) { return d1(x); },
          [d2](double x) { return d2(x); }};
}

}  // namespace

TEST(ExpMix, CanonicalOrderAndCollapse) {
  const ExpMix g(2.0, 3.0, 1.0, -1.0);
  EXPECT_EQ(g.lambda1(), -1.0);
  EXPECT_EQ(g.a(), 1.0);
  EXPECT_EQ(g.lambda2(), 3.0);
  EXPECT_EQ(g.b(), 2.0);
  const ExpMix same(1.0, 0.5, 2.0, 0.5);
  EXPECT_EQ(same.a(), 3.0);
  EXPECT_EQ(same.b(), 0.0);
  EXPECT_TRUE(same.single());
  EXPECT_THROW(ExpMix(-1.0, 0.0, 1.0, 1.0), ValidationError);
  EXPECT_DOUBLE_EQ(ExpMix(0.5, -1.0, 0.5, 1.0)(0.3), std::cosh(0.3));
}

TEST(ApplyToPolynomial, Examples) {
  const auto bm = catalog_process("brownian");
  EXPECT_EQ(apply_to_polynomial(bm, Polynomial{0.0, 0.0, 1.0}), Polynomial{1.0});
  EXPECT_EQ(apply_to_polynomial(bm, Polynomial{0.0, 0.0, 0.0, 1.0}), Polynomial({0.0, 3.0}));
  const auto two = catalog_process("cpoisson-two-point");
  const Polynomial a4 = apply_to_polynomial(two, Polynomial{0.0, 0.0, 0.0, 0.0, 1.0});
  EXPECT_TRUE(approx_equal(a4, Polynomial({1.0, 0.0, 6.0}), 1e-14)) << a4;
}

TEST(ApplyToPolynomial, InfiniteMomentIsAnError) {
  const auto tail = catalog_process("pareto-tail");
  EXPECT_NO_THROW((void)apply_to_polynomial(tail, Polynomial{0.0, 1.0}));
  try {
    (void)apply_to_polynomial(tail, Polynomial{0.0, 0.0, 1.0});
    FAIL() << "expected InfiniteMomentError";
  } catch (const InfiniteMomentError& e) {
    EXPECT_EQ(e.order(), 2);
  }
}

TEST(ApplyToPolynomial, LinearityConstantsAndDegree) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& spec : finite_moment_catalog()) {
    std::vector<double> pc(6);
    std::vector<double> qc(6);
    for (auto& v : pc) v = u(rng);
    for (auto& v : qc) v = u(rng);
    const Polynomial p(pc);
    const Polynomial q(qc);
    const double a = u(rng);
    const double b = u(rng);
    const Polynomial lhs = apply_to_polynomial(spec, a * p + b * q);
    const Polynomial rhs = a * apply_to_polynomial(spec, p) + b * apply_to_polynomial(spec, q);
    EXPECT_TRUE(approx_equal(lhs, rhs, 1e-12)) << spec.name();
    EXPECT_EQ(apply_to_polynomial(spec, Polynomial{4.2}), Polynomial{}) << spec.name();
    EXPECT_LE(apply_to_polynomial(spec, p).degree(), p.degree() - 1) << spec.name();
  }
}

TEST(ApplyToPolynomial, MatchesLinearCoefficientOfSemigroup) {
  for (const auto& spec : finite_moment_catalog()) {
    for (int n = 0; n <= 6; ++n) {
      const Polynomial xn = Polynomial::monomial(n);
      const Polynomial a = apply_to_polynomial(spec, xn);
      const Polynomial lin = semigroup_on_polynomial(spec, xn).t_coefficient(1);
      EXPECT_TRUE(approx_equal(a, lin, 1e-10)) << spec.name() << " n=" << n << ": " << a
                                               << " vs " << lin;
    }
  }
}

TEST(ApplyToExponential, Examples) {
  const auto bm = catalog_process("brownian");
  EXPECT_DOUBLE_EQ(apply_to_exponential(bm, 1.0), 0.5);
  EXPECT_EQ(apply_to_exponential(bm, 0.0), 0.0);
  EXPECT_NEAR(apply_to_exponential(catalog_process("gamma"), 0.5), std::log(2.0), 1e-10);
  EXPECT_THROW((void)apply_to_exponential(catalog_process("gamma"), 1.5), DomainError);
}

TEST(ApplyNumeric, Examples) {
  const auto bm = catalog_process("brownian");
  const SmoothFunction sine{[](double x) { return std::sin(x); },
                            [](double x) { return std::cos(x); },
                            [](double x) { return -std::sin(x); }};
  EXPECT_NEAR(apply_numeric(bm, sine, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(apply_numeric(bm, poly_fn(Polynomial{0.0, 0.0, 1.0}), 7.0), 1.0, 1e-14);
  const ProcessSpec jump2(LevyTriplet(0.0, 0.0, LevyMeasure({{2.0, 1.0}}, {})),
                          SamplerKind::compound_poisson);
  EXPECT_NEAR(apply_numeric(jump2, poly_fn(Polynomial{0.0, 0.0, 1.0}), 1.0), 8.0, 1e-14);
}

TEST(ApplyNumeric, AgreesWithClosedFormOnPolynomials) {
  const Polynomial p{0.3, -1.0, 0.5, 0.25, -0.1};
  for (const auto& name : default_catalog_names()) {
    const auto spec = catalog_process(name);
    const Polynomial ap = apply_to_polynomial(spec, p);
    for (double x : {-1.5, 0.0, 0.7, 2.0}) {
      const double want = ap(x);
      EXPECT_NEAR(apply_numeric(spec, poly_fn(p), x), want, 1e-8 * std::max(1.0, std::abs(want)))
          << name << " x=" << x;
    }
  }
}

TEST(ApplyNumeric, EigenConsistencyOnExponentials) {
  for (const auto& name : all_catalog_names()) {
    const auto spec = catalog_process(name);
    if (name == "pareto-tail") continue;  // no exponential moments
    for (double lambda : {-0.7, 0.3, 0.6}) {
      const ExpMix g = ExpMix::exponential(lambda);
      const SmoothFunction f{[g](double x) { return g(x); },
                             [g](double x) { return g.derivative(x); },
                             [g](double x) { return g.second_derivative(x); }};
      for (double x : {-0.4, 1.1}) {
        const double want = apply_to_exponential(spec, lambda) * g(x);
        EXPECT_NEAR(apply_numeric(spec, f, x), want, 1e-7 * std::max(1e-300, std::abs(want)) + 1e-15)
            << name << " lambda=" << lambda;
      }
    }
  }
}

TEST(ApplyNumeric, FromValuesUsesDifferencedDerivatives) {
  const auto bm = catalog_process("brownian");
  const auto f = SmoothFunction::from_values([](double x) { return std::cos(x); }, 1e-4);
  EXPECT_NEAR(apply_numeric(bm, f, 0.5), -0.5 * std::cos(0.5), 1e-7);
}

TEST(ClassifyAdditive, Examples) {
  const auto bm = catalog_process("brownian");
  const auto v = classify_additive(bm, Polynomial{2.0, -3.0, 5.0});
  EXPECT_EQ(v.verdict, Verdict::martingale_function);
  EXPECT_DOUBLE_EQ(v.alpha, 5.0);
  EXPECT_FALSE(v.witness_poly.has_value());

  const auto w = classify_additive(bm, Polynomial{0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(w.verdict, Verdict::not_martingale_function);
  ASSERT_TRUE(w.witness_poly.has_value());
  EXPECT_EQ(*w.witness_poly, Polynomial({0.0, 3.0}));
  EXPECT_TRUE(std::isnan(w.alpha));

  const auto t = classify_additive(catalog_process("trivial"), Polynomial{0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(t.verdict, Verdict::trivial_process_indeterminate);
}

TEST(ClassifyAdditive, WitnessPresentIffNegative) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& spec : finite_moment_catalog()) {
    for (int deg = 0; deg <= 6; ++deg) {
      std::vector<double> c(static_cast<std::size_t>(deg) + 1);
      for (auto& v : c) v = u(rng);
      const auto r = classify_additive(spec, Polynomial(c));
      EXPECT_EQ(r.witness_poly.has_value(), r.verdict == Verdict::not_martingale_function);
      EXPECT_GT(r.tolerance_used, 0.0);
    }
  }
}

TEST(ClassifyAdditive, DegreeRigidity) {
  for (const auto& spec : finite_moment_catalog()) {
    if (!spec.nontrivial()) continue;
    for (int n = 3; n <= 6; ++n) {
      EXPECT_EQ(classify_additive(spec, Polynomial::monomial(n)).verdict,
                Verdict::not_martingale_function)
          << spec.name() << " n=" << n;
    }
    // A x^2 = 2 kappa_1 x + kappa_2: quadratics qualify only for centred processes.
    const bool centred = std::abs(cumulants(spec, 1)[0]) < 1e-12;
    EXPECT_EQ(classify_additive(spec, Polynomial{1.0, 2.0, -0.5}).positive(), centred)
        << spec.name();
    EXPECT_TRUE(classify_additive(spec, Polynomial{1.0, 2.0}).positive()) << spec.name();
  }
}

TEST(ClassifyAdditive, ToleranceIsReportedAndConfigurable) {
  const auto bm = catalog_process("brownian");
  // A x^3 = 3x; with a huge tolerance the witness is below threshold.
  const auto loose = classify_additive(bm, Polynomial{0.0, 0.0, 0.0, 1e-6}, 1.0);
  EXPECT_EQ(loose.verdict, Verdict::martingale_function);
  const auto tight = classify_additive(bm, Polynomial{0.0, 0.0, 0.0, 1e-6});
  EXPECT_EQ(tight.verdict, Verdict::not_martingale_function);
  EXPECT_GE(tight.tolerance_used, kClassifyTolerance);
}

TEST(ClassifyMultiplicative, Examples) {
  const auto bm = catalog_process("brownian");
  const auto c = classify_multiplicative(bm, ExpMix(0.5, 1.0, 0.5, -1.0));
  EXPECT_EQ(c.verdict, Verdict::martingale_function);
  EXPECT_DOUBLE_EQ(c.alpha, 0.5);

  const auto n = classify_multiplicative(bm, ExpMix(1.0, 1.0, 1.0, 2.0));
  EXPECT_EQ(n.verdict, Verdict::not_martingale_function);
  ASSERT_TRUE(n.witness_eta.has_value());
  EXPECT_DOUBLE_EQ(n.witness_eta->first, 0.5);
  EXPECT_DOUBLE_EQ(n.witness_eta->second, 2.0);

  for (const auto& name : all_catalog_names()) {
    const auto one = classify_multiplicative(catalog_process(name), ExpMix::exponential(0.0));
    if (name == "trivial") {
      EXPECT_EQ(one.verdict, Verdict::trivial_process_indeterminate);
      continue;
    }
    EXPECT_EQ(one.verdict, Verdict::martingale_function) << name;
    EXPECT_EQ(one.alpha, 0.0) << name;
  }
}

TEST(ClassifyMultiplicative, SingleExponentialAlwaysQualifies) {
  const auto gm = catalog_process("gamma");
  const auto r = classify_multiplicative(gm, ExpMix::exponential(0.5, 3.0));
  EXPECT_TRUE(r.positive());
  EXPECT_NEAR(r.alpha, std::log(2.0), 1e-10);
}

TEST(ClassifyMultiplicative, Errors) {
  EXPECT_THROW((void)classify_multiplicative(catalog_process("gamma"), ExpMix(1.0, 0.5, 1.0, 2.0)),
               DomainError);
  EXPECT_THROW((void)classify_multiplicative(catalog_process("brownian"), ExpMix(0.0, 1.0, 0.0, 2.0)),
               ValidationError);
}
