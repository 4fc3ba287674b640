#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "levymart/process.hpp"
#include "levymart/simulate.hpp"

namespace levy {

using RealFunction = std::function<double(double)>;

struct NamedFunction {
  std::string name;
  RealFunction f;
};

/// Probes phi(X_s): 1, x, x^2, tanh, exp(-x^2).
std::vector<NamedFunction> default_probe_family();

struct SemigroupEstimate {
  double estimate;
  double standard_error;
  std::size_t n;
};

/// Monte Carlo E f(x + X_t) with a jackknife standard error. Throws
/// ValidationError reporting how many draws gave non-finite f values.
SemigroupEstimate estimate_semigroup(const ProcessSpec& spec, const RealFunction& f, double t,
                                     double x, std::size_t n_paths, std::uint64_t seed,
                                     const SamplerOptions& opts = {});

enum class MartingaleMode { additive, multiplicative };

std::string to_string(MartingaleMode m);

struct ProbeResult {
  std::string name;
  double statistic;
  double standard_error;
  double z;
  double p_value;
};

struct MartingaleReport {
  MartingaleMode mode;
  double s;
  double t;
  std::vector<ProbeResult> probes;
  double level;
  /// Smallest probe p-value times the number of probes, capped at 1.
  double adjusted_p;
  bool reject;
  double gamma_s;
  double gamma_t;
  std::size_t n_paths;
  std::uint64_t seed;
  /// Hypotheses the verdict relies on that the process entry does not assert.
  std::vector<std::string> assumptions;
};

struct MtgTestOptions {
  std::vector<NamedFunction> probes = default_probe_family();
  SamplerOptions sampler{};
};

/// Tests E[(M_t - M_s) phi(X_s)] = 0 with M_u = f(X_u) - mean f(X_u).
MartingaleReport test_additive(const ProcessSpec& spec, const RealFunction& f, double s, double t,
                               std::size_t n_paths, double level, std::uint64_t seed,
                               const MtgTestOptions& opts = {});

/// Tests E[(N_t / N_s - 1) phi(X_s)] = 0 with N_u = g(X_u) / mean g(X_u).
/// g must be positive on every draw.
MartingaleReport test_multiplicative(const ProcessSpec& spec, const RealFunction& g, double s,
                                     double t, std::size_t n_paths, double level,
                                     std::uint64_t seed, const MtgTestOptions& opts = {});

struct GammaResidual {
  double s;
  double t;
  double value;
  double standard_error;
};

struct GammaDiagnostics {
  MartingaleMode mode;
  std::vector<double> times;
  std::vector<double> gamma;
  std::vector<double> gamma_se;
  /// gamma(s+t) - gamma(s) - gamma(t) after removing f(0), or the same for
  /// log(gamma / g(0)), over all pairs with s + t on the grid.
  std::vector<GammaResidual> residuals;
  /// Slope through the origin of gamma - f(0) (additive) or log(gamma / g(0)).
  double alpha_hat;
  std::size_t n_paths;
  std::uint64_t seed;
};

GammaDiagnostics gamma_diagnostics(const ProcessSpec& spec, const RealFunction& f,
                                   MartingaleMode mode, std::vector<double> times,
                                   std::size_t n_paths, std::uint64_t seed,
                                   const SamplerOptions& opts = {});

}  // namespace levy
