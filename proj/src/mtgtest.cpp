#include "levymart/mtgtest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levymart/errors.hpp"

namespace levy {

namespace {

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double mean(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size()) / static_cast<double>(x.size());
}

// Standard error of the mean.
double mean_se(const std::vector<double>& x, double m) {
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - m) * (x[i] - m);
  const double n = static_cast<double>(x.size());
  return std::sqrt(pairwise_sum(sq.data(), sq.size()) / (n - 1.0) / n);
}

std::vector<double> apply_checked(const RealFunction& f, const std::vector<double>& xs,
                                  const char* what) {
  std::vector<double> out(xs.size());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = f(xs[i]);
    if (!std::isfinite(out[i])) ++bad;
  }
  if (bad > 0) {
    throw ValidationError(std::string(what) + ": " + std::to_string(bad) + " of " +
                          std::to_string(xs.size()) + " draws gave non-finite values");
  }
  return out;
}

void check_times(double s, double t) {
  if (!(s > 0.0 && t > s && std::isfinite(t))) throw ValidationError("need 0 < s < t");
}

void check_common(std::size_t n_paths, double level) {
  if (n_paths < 2) throw ValidationError("n_paths must be >= 2");
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("level must lie in (0, 1)");
}

std::vector<std::string> density_assumptions(const ProcessSpec& spec) {
  std::vector<std::string> out;
  const ProcessFlags& fl = spec.flags();
  if (!fl.has_density || fl.density_support == DensitySupport::unknown) {
    out.emplace_back(
        "transition densities are not asserted for this process; the characterization of "
        "martingale functions assumes strictly positive densities, so a non-rejection does not "
        "certify the necessity direction");
  }
  return out;
}

ProbeResult probe(const std::string& name, const std::vector<double>& d) {
  const double m = mean(d);
  const double se = mean_se(d, m);
  if (se == 0.0) return {name, m, 0.0, 0.0, 1.0};
  const double z = m / se;
  return {name, m, se, z, std::erfc(std::abs(z) / std::sqrt(2.0))};
}

void finish(MartingaleReport& r) {
  double min_p = 1.0;
  for (const ProbeResult& p : r.probes) min_p = std::min(min_p, p.p_value);
  r.adjusted_p = std::min(1.0, min_p * static_cast<double>(r.probes.size()));
  r.reject = r.adjusted_p < r.level;
}

}  // namespace

std::vector<NamedFunction> default_probe_family() {
  return {
      {"1", [](double) { return 1.0; }},
      {"x", [](double x) { return x; }},
      {"x^2", [](double x) { return x * x; }},
      {"tanh", [](double x) { return std::tanh(x); }},
      {"gaussian-bump", [](double x) { return std::exp(-x * x); }},
  };
}

std::string to_string(MartingaleMode m) {
  return m == MartingaleMode::additive ? "additive" : "multiplicative";
}

SemigroupEstimate estimate_semigroup(const ProcessSpec& spec, const RealFunction& f, double t,
                                     double x, std::size_t n_paths, std::uint64_t seed,
                                     const SamplerOptions& opts) {
  if (!(t > 0.0)) throw ValidationError("t must be > 0");
  if (n_paths < 2) throw ValidationError("n_paths must be >= 2");
  const PathBatch batch = sample_paths(spec, TimeGrid({0.0, t}), n_paths, seed, opts);
  std::vector<double> xs = batch.column(1);
  for (double& v : xs) v += x;
  const std::vector<double> fx = apply_checked(f, xs, "estimate_semigroup");

  // Jackknife over leave-one-out means.
  const double n = static_cast<double>(n_paths);
  const double total = pairwise_sum(fx.data(), fx.size());
  std::vector<double> loo(fx.size());
  for (std::size_t i = 0; i < fx.size(); ++i) loo[i] = (total - fx[i]) / (n - 1.0);
  const double loo_mean = mean(loo);
  std::vector<double> sq(loo.size());
  for (std::size_t i = 0; i < loo.size(); ++i) sq[i] = (loo[i] - loo_mean) * (loo[i] - loo_mean);
  const double se = std::sqrt((n - 1.0) / n * pairwise_sum(sq.data(), sq.size()));
  return {total / n, se, n_paths};
}

MartingaleReport test_additive(const ProcessSpec& spec, const RealFunction& f, double s, double t,
                               std::size_t n_paths, double level, std::uint64_t seed,
                               const MtgTestOptions& opts) {
  check_times(s, t);
  check_common(n_paths, level);
  const PathBatch batch = sample_paths(spec, TimeGrid({0.0, s, t}), n_paths, seed, opts.sampler);
  const std::vector<double> xs = batch.column(1);
  const std::vector<double> fs = apply_checked(f, xs, "test_additive");
  const std::vector<double> ft = apply_checked(f, batch.column(2), "test_additive");
  const double gs = mean(fs);
  const double gt = mean(ft);

  MartingaleReport r{MartingaleMode::additive, s, t, {}, level, 1.0, false, gs, gt, n_paths,
                     seed, density_assumptions(spec)};
  std::vector<double> d(n_paths);
  for (const NamedFunction& phi : opts.probes) {
    for (std::size_t i = 0; i < n_paths; ++i) {
      d[i] = ((ft[i] - gt) - (fs[i] - gs)) * phi.f(xs[i]);
    }
    r.probes.push_back(probe(phi.name, d));
  }
  finish(r);
  return r;
}

MartingaleReport test_multiplicative(const ProcessSpec& spec, const RealFunction& g, double s,
                                     double t, std::size_t n_paths, double level,
                                     std::uint64_t seed, const MtgTestOptions& opts) {
  check_times(s, t);
  check_common(n_paths, level);
  const PathBatch batch = sample_paths(spec, TimeGrid({0.0, s, t}), n_paths, seed, opts.sampler);
  const std::vector<double> xs = batch.column(1);
  const std::vector<double> gs = apply_checked(g, xs, "test_multiplicative");
  const std::vector<double> gt = apply_checked(g, batch.column(2), "test_multiplicative");
  for (std::size_t i = 0; i < n_paths; ++i) {
    if (!(gs[i] > 0.0) || !(gt[i] > 0.0)) {
      throw ValidationError("test_multiplicative: g must be positive on every draw");
    }
  }
  const double ms = mean(gs);
  const double mt = mean(gt);

  MartingaleReport r{MartingaleMode::multiplicative, s, t, {}, level, 1.0, false, ms, mt,
                     n_paths, seed, density_assumptions(spec)};
  std::vector<double> d(n_paths);
  for (const NamedFunction& phi : opts.probes) {
    for (std::size_t i = 0; i < n_paths; ++i) {
      const double ratio = (gt[i] / mt) / (gs[i] / ms);
      d[i] = (ratio - 1.0) * phi.f(xs[i]);
    }
    r.probes.push_back(probe(phi.name, d));
  }
  finish(r);
  return r;
}

GammaDiagnostics gamma_diagnostics(const ProcessSpec& spec, const RealFunction& f,
                                   MartingaleMode mode, std::vector<double> times,
                                   std::size_t n_paths, std::uint64_t seed,
                                   const SamplerOptions& opts) {
  if (n_paths < 2) throw ValidationError("n_paths must be >= 2");
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.empty() || !(times.front() > 0.0)) {
    throw ValidationError("gamma_diagnostics needs positive times");
  }
  std::vector<double> grid_times{0.0};
  grid_times.insert(grid_times.end(), times.begin(), times.end());
  const PathBatch batch = sample_paths(spec, TimeGrid(grid_times), n_paths, seed, opts);

  const double f0 = f(0.0);
  if (mode == MartingaleMode::multiplicative && !(f0 > 0.0)) {
    throw ValidationError("gamma_diagnostics: g(0) must be positive");
  }
  GammaDiagnostics out{mode, times, {}, {}, {}, 0.0, n_paths, seed};
  std::vector<std::vector<double>> values;
  for (std::size_t j = 1; j < grid_times.size(); ++j) {
    values.push_back(apply_checked(f, batch.column(j), "gamma_diagnostics"));
    const double m = mean(values.back());
    if (mode == MartingaleMode::multiplicative && !(m > 0.0)) {
      throw ValidationError("gamma_diagnostics: estimated gamma is not positive");
    }
    out.gamma.push_back(m);
    out.gamma_se.push_back(mean_se(values.back(), m));
  }

  // Centred gamma: gamma - f(0), or log(gamma / g(0)).
  const auto centred = [&](std::size_t i) {
    return mode == MartingaleMode::additive ? out.gamma[i] - f0 : std::log(out.gamma[i] / f0);
  };
  const auto find = [&](double u) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(times[i] - u) <= 1e-12 * std::max(1.0, u)) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  };
  std::vector<double> z(n_paths);
  for (std::size_t a = 0; a < times.size(); ++a) {
    for (std::size_t b = a; b < times.size(); ++b) {
      const std::ptrdiff_t c = find(times[a] + times[b]);
      if (c < 0) continue;
      const auto cu = static_cast<std::size_t>(c);
      const double value = centred(cu) - centred(a) - centred(b);
      // Per-path linearization of the residual.
      for (std::size_t i = 0; i < n_paths; ++i) {
        if (mode == MartingaleMode::additive) {
          z[i] = values[cu][i] - values[a][i] - values[b][i];
        } else {
          z[i] = values[cu][i] / out.gamma[cu] - values[a][i] / out.gamma[a] -
                 values[b][i] / out.gamma[b];
        }
      }
      out.residuals.push_back({times[a], times[b], value, mean_se(z, mean(z))});
    }
  }

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    num += times[i] * centred(i);
    den += times[i] * times[i];
  }
  out.alpha_hat = num / den;
  return out;
}

}  // namespace levy
