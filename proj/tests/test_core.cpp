#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "levymart/catalog.hpp"
#include "levymart/errors.hpp"
#include "levymart/exponent.hpp"
#include "levymart/moments.hpp"

using namespace levy;

namespace {

ProcessSpec make(double b, double s2, LevyMeasure nu, SamplerKind k = SamplerKind::composite) {
  return ProcessSpec(LevyTriplet(b, s2, std::move(nu)), k);
}

LevyMeasure two_point() { return LevyMeasure({{-1.0, 0.5}, {1.0, 0.5}}, {}); }

LevyMeasure power_tail(double p) {
  return LevyMeasure({}, {DensityPiece::tempered(1.0, p, 0.0, -kInf, -1.0),
                          DensityPiece::tempered(1.0, p, 0.0, 1.0, kInf)});
}

void expect_close(std::complex<double> a, std::complex<double> b, double rel) {
  const double scale = std::max(1.0, std::abs(b));
  EXPECT_NEAR(a.real(), b.real(), rel * scale);
  EXPECT_NEAR(a.imag(), b.imag(), rel * scale);
}

}  // namespace

TEST(ExtendedReal, DivergentHasNoValue) {
  const ExtendedReal d = ExtendedReal::divergent();
  EXPECT_FALSE(d.finite());
  EXPECT_THROW((void)d.value(), DomainError);
  EXPECT_EQ(d.value_or(-1.0), -1.0);
  EXPECT_EQ(ExtendedReal(2.5).value(), 2.5);
}

TEST(LevyMeasure, RejectsAtomAtZeroAndPiecesAcrossZero) {
  EXPECT_THROW(LevyMeasure({{0.0, 1.0}}, {}), ValidationError);
  EXPECT_THROW(DensityPiece::tempered(1.0, 1.0, 1.0, -1.0, 1.0), ValidationError);
  EXPECT_THROW(LevyMeasure({{1.0, -1.0}}, {}), ValidationError);
}

TEST(LevyMeasure, RejectsNonIntegrableSmallJumps) {
  // |y|^{-3} is not y^2-integrable at 0.
  EXPECT_THROW(DensityPiece::tempered(1.0, 3.0, 1.0, 0.0, 1.0), ValidationError);
}

TEST(LevyTriplet, RejectsNegativeVariance) {
  EXPECT_THROW(LevyTriplet(0.0, -1.0, {}), ValidationError);
}

TEST(LevyMeasure, ActivityClasses) {
  EXPECT_EQ(two_point().activity(), ActivityClass::finite);
  EXPECT_EQ(catalog_process("gamma").triplet().measure().activity(),
            ActivityClass::infinite_finite_variation);
  const LevyMeasure iv({}, {DensityPiece::tempered(1.0, 2.5, 1.0, 0.0, kInf)});
  EXPECT_EQ(iv.activity(), ActivityClass::infinite_infinite_variation);
}

TEST(ProcessSpec, NontrivialFlag) {
  EXPECT_FALSE(catalog_process("trivial").nontrivial());
  EXPECT_TRUE(catalog_process("brownian").nontrivial());
  EXPECT_TRUE(make(0.3, 0.0, {}, SamplerKind::gaussian).nontrivial());
}

TEST(ProcessSpec, SamplerRecipeMustMatchTriplet) {
  EXPECT_THROW(make(0.0, 1.0, two_point(), SamplerKind::gaussian), ValidationError);
  EXPECT_THROW(make(0.0, 1.0, two_point(), SamplerKind::compound_poisson), ValidationError);
  EXPECT_THROW(make(0.0, 0.0, two_point(), SamplerKind::gamma_subordinator), ValidationError);
  EXPECT_NO_THROW(make(0.0, 0.0, two_point(), SamplerKind::compound_poisson));
}

// eval_exponent examples
TEST(EvalExponent, BrownianAtTwo) {
  expect_close(eval_exponent(catalog_process("brownian"), 2.0), {2.0, 0.0}, 1e-14);
}

TEST(EvalExponent, UncompensatedUnitAtomAtPi) {
  const auto spec = make(0.0, 0.0, LevyMeasure({{1.0, 1.0}}, {}), SamplerKind::compound_poisson);
  expect_close(eval_exponent(spec, std::numbers::pi), {2.0, 0.0}, 1e-12);
}

TEST(EvalExponent, GammaDensityWithZeroDrift) {
  // b = 0 leaves the compensator term i xi m_1 with m_1 = 1 - e^{-1}.
  const auto spec = make(0.0, 0.0, LevyMeasure({}, {DensityPiece::tempered(1.0, 1.0, 1.0, 0.0, kInf)}));
  const std::complex<double> closed = std::log(std::complex<double>(1.0, -1.0)) +
                                      std::complex<double>(0.0, 1.0 - std::exp(-1.0));
  expect_close(eval_exponent(spec, 1.0), closed, 1e-8);
}

TEST(EvalExponent, ZeroAtOrigin) {
  for (const auto& name : all_catalog_names()) {
    const auto z = eval_exponent(catalog_process(name), 0.0);
    EXPECT_EQ(z, std::complex<double>(0.0, 0.0)) << name;
  }
}

TEST(EvalExponent, ClosedFormsAcrossXi) {
  const auto bm = catalog_process("brownian:drift=0.3,sigma2=2");
  const auto cp = catalog_process("cpoisson-two-point:rate=2,size=1.5");
  const auto gm = catalog_process("gamma:c=2,beta=3");
  for (double xi : {-7.0, -1.3, 0.2, 0.9, 4.0, 25.0}) {
    expect_close(eval_exponent(bm, xi), {xi * xi, -0.3 * xi}, 1e-12);
    expect_close(eval_exponent(cp, xi), {2.0 * (1.0 - std::cos(1.5 * xi)), 0.0}, 1e-10);
    expect_close(eval_exponent(gm, xi), 2.0 * std::log(std::complex<double>(1.0, -xi / 3.0)),
                 1e-8);
  }
}

TEST(EvalExponent, HermitianAndNonnegativeRealPart) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (const auto& name : all_catalog_names()) {
    const auto spec = catalog_process(name);
    for (int i = 0; i < 6; ++i) {
      const double xi = u(rng);
      const auto a = eval_exponent(spec, xi);
      const auto b = eval_exponent(spec, -xi);
      expect_close(a, std::conj(b), 1e-9);
      EXPECT_GE(a.real(), -1e-12) << name << " xi=" << xi;
    }
  }
}

// eval_laplace_exponent examples
TEST(LaplaceExponent, Examples) {
  EXPECT_NEAR(eval_laplace_exponent(catalog_process("brownian"), 1.0).value(), 0.5, 1e-15);
  const auto gamma = catalog_process("gamma");
  EXPECT_NEAR(eval_laplace_exponent(gamma, 0.5).value(), std::log(2.0), 1e-10);
  EXPECT_FALSE(eval_laplace_exponent(gamma, 1.0).finite());
  EXPECT_FALSE(eval_laplace_exponent(gamma, 3.0).finite());
  EXPECT_EQ(eval_laplace_exponent(gamma, 0.0).value(), 0.0);
}

TEST(LaplaceExponent, PowerTailDivergesForAnyNonzeroRate) {
  const auto spec = make(0.0, 0.0, power_tail(2.5), SamplerKind::compound_poisson);
  EXPECT_FALSE(eval_laplace_exponent(spec, 0.01).finite());
  EXPECT_FALSE(eval_laplace_exponent(spec, -0.01).finite());
  EXPECT_EQ(eval_laplace_exponent(spec, 0.0).value(), 0.0);
}

TEST(LaplaceExponent, MatchesCumulantSeriesForSmallLambda) {
  for (const auto& name : default_catalog_names()) {
    const auto spec = catalog_process(name);
    const auto kappa = cumulants(spec, 8);
    for (double lambda : {-0.05, 0.02, 0.05}) {
      double series = 0.0;
      double fact = 1.0;
      for (std::size_t j = 1; j <= kappa.size(); ++j) {
        fact *= static_cast<double>(j);
        series += kappa[j - 1] * std::pow(lambda, static_cast<double>(j)) / fact;
      }
      // Truncation after lambda^8 is far below the tolerance for these rates.
      EXPECT_NEAR(eval_laplace_exponent(spec, lambda).value(), series, 1e-10) << name;
    }
  }
}

TEST(LaplaceExponent, ConvexOnDomain) {
  for (const auto& name : default_catalog_names()) {
    const auto spec = catalog_process(name);
    const double h = 0.1;
    for (double l = -2.0; l <= 0.7; l += 0.3) {
      const double mid = eval_laplace_exponent(spec, l).value();
      const double lo = eval_laplace_exponent(spec, l - h).value();
      const double hi = eval_laplace_exponent(spec, l + h).value();
      EXPECT_GE(lo + hi - 2.0 * mid, -1e-9) << name << " at " << l;
    }
  }
}

// measure_moments examples
TEST(MeasureMoments, Examples) {
  EXPECT_NEAR(measure_moments(two_point(), 2, Region::outer).value(), 1.0, 1e-15);
  EXPECT_NEAR(measure_moments(two_point(), 3, Region::outer).value(), 0.0, 1e-15);
  const LevyMeasure tail = power_tail(2.5);
  // Absolute first moment: 2 * int_1^inf y^{-1.5} dy = 4. The signed one vanishes.
  EXPECT_NEAR(measure_moments(tail, 1, Region::outer, {}, true).value(), 4.0, 1e-9);
  EXPECT_NEAR(measure_moments(tail, 1, Region::outer).value(), 0.0, 1e-9);
  EXPECT_FALSE(measure_moments(tail, 2, Region::outer).finite());
}

TEST(MeasureMoments, GammaIntegrals) {
  const auto gamma = catalog_process("gamma");
  const auto& nu = gamma.triplet().measure();
  // int_0^inf y^{j-1} e^{-y} dy = (j-1)!
  for (int j = 1; j <= 5; ++j) {
    const double total = measure_moments(nu, j, Region::inner).value() +
                         measure_moments(nu, j, Region::outer).value();
    EXPECT_NEAR(total, std::tgamma(j), 1e-9 * std::tgamma(j));
  }
}

// support_class examples
TEST(SupportClass, Examples) {
  EXPECT_EQ(support_class(catalog_process("brownian")), SupportClass::full_line);
  EXPECT_EQ(support_class(catalog_process("poisson")), SupportClass::lattice);
  EXPECT_EQ(support_class(catalog_process("gamma")), SupportClass::half_line);
  EXPECT_EQ(support_class(catalog_process("trivial")), SupportClass::degenerate);
}

TEST(SupportClass, DriftOffTheLatticeIsNotLattice) {
  // Positive jumps and positive drift off the lattice: a half-line, not a lattice.
  EXPECT_EQ(support_class(catalog_process("poisson:drift=0.5")), SupportClass::half_line);
  EXPECT_EQ(support_class(catalog_process("poisson:drift=-0.5")), SupportClass::full_line);
  EXPECT_EQ(support_class(catalog_process("poisson:drift=2")), SupportClass::lattice);
  EXPECT_EQ(support_class(catalog_process("cpoisson-two-point:size=0.5")), SupportClass::lattice);
}

TEST(SupportClass, NegativeDriftSubordinatorIsFullLine) {
  EXPECT_EQ(support_class(catalog_process("gamma:drift=-0.1")), SupportClass::full_line);
}

TEST(SupportClass, LatticeHasNonzeroExponentZero) {
  // Grid spacing 0.01 puts the nearest point within 0.005 of 2 pi, where |psi| < 0.01.
  const auto zeros = scan_exponent_zeros(catalog_process("poisson"), 7.0, 700, 1e-2);
  const bool near_two_pi = std::any_of(zeros.begin(), zeros.end(), [](double z) {
    return std::abs(z - 2.0 * std::numbers::pi) < 0.02;
  });
  EXPECT_TRUE(near_two_pi);
}

// catalog and config
TEST(Catalog, JsonRoundTripPreservesFingerprint) {
  for (const auto& name : all_catalog_names()) {
    const auto spec = catalog_process(name);
    const auto again = process_from_json(process_to_json(spec));
    EXPECT_EQ(process_to_json(again), process_to_json(spec)) << name;
    EXPECT_EQ(fingerprint(again), fingerprint(spec)) << name;
  }
}

TEST(Catalog, FingerprintIgnoresNameButNotParameters) {
  auto j = process_to_json(catalog_process("brownian"));
  j["name"] = "renamed";
  EXPECT_EQ(fingerprint(process_from_json(j)), fingerprint(catalog_process("brownian")));
  EXPECT_NE(fingerprint(catalog_process("brownian:sigma2=2")),
            fingerprint(catalog_process("brownian")));
}

TEST(Catalog, UnknownNamesAndParametersAreRejected) {
  EXPECT_THROW(catalog_process("nope"), ValidationError);
  EXPECT_THROW(catalog_process("brownian:bogus=1"), ValidationError);
  EXPECT_THROW(catalog_process("brownian:sigma2=x"), ValidationError);
}

TEST(Config, ExplicitFieldsAndSupportKeywords) {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "drift": 0.1, "sigma2": 0.5,
    "atoms": [[2.0, 0.3]],
    "density": [{"kind": "tempered", "params": {"c": 1, "p": 1.5, "beta": 2}, "support": "both"},
                {"kind": "gaussian", "params": {"rate": 0.4, "mean": 1, "sd": 0.3}, "support": [1.5, null]}]
  })");
  const auto spec = process_from_json(j);
  EXPECT_EQ(spec.triplet().drift(), 0.1);
  EXPECT_EQ(spec.triplet().measure().atoms().size(), 1U);
  EXPECT_EQ(spec.triplet().measure().pieces().size(), 3U);
  EXPECT_EQ(spec.sampler(), SamplerKind::composite);
}

TEST(Config, RejectsUnknownFieldsAndMixedCatalog) {
  EXPECT_THROW(process_from_json(nlohmann::json::parse(R"({"drift": 0, "colour": 1})")),
               ValidationError);
  EXPECT_THROW(process_from_json(nlohmann::json::parse(R"({"catalog": "brownian", "drift": 1})")),
               ValidationError);
  EXPECT_THROW(process_from_json(nlohmann::json::parse(R"({"sigma2": -1})")), ValidationError);
}
