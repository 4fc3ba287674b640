#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "levymart/generator.hpp"
#include "levymart/moments.hpp"
#include "levymart/process.hpp"

namespace levy {

inline constexpr double kRootTolerance = 1e-10;
inline constexpr double kEdgeShrink = 1e-6;

struct RootReport {
  double alpha;
  /// Sorted; 0, 1 or 2 entries.
  std::vector<double> roots;
  double lambda_star;
  double eta_min;
  /// Exponential-moment domain and the bracket actually searched.
  Interval domain;
  Interval search;
  /// The minimiser sits at an end of the search bracket, so eta is monotone there.
  bool monotone;
  std::vector<std::string> warnings;
};

/// Solves eta(lambda) = alpha on the exponential-moment domain using the
/// convexity of eta.
RootReport solve_lambda(const ProcessSpec& spec, double alpha, double kappa_max = kDefaultKappaMax,
                        const QuadratureOptions& opts = {});

struct ExpMartingale {
  ExpMix g;
  double alpha;
  /// E g(X_t) = (a + b) e^{alpha t}.
  double normalizer(double t) const noexcept { return (g.a() + g.b()) * std::exp(alpha * t); }
};

/// g = a e^{r1 x} + b e^{r2 x} from the report's roots. With one root, b must be 0.
ExpMartingale build_exp_martingale(const RootReport& report, double a, double b);

}  // namespace levy
