#pragma once

#include <cstdint>
#include <vector>

#include "levymart/process.hpp"
#include "levymart/rng.hpp"

namespace levy {

/// 0 = t_0 < t_1 < ... < t_m.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);
  /// {0, t_max/m, ..., t_max}.
  static TimeGrid uniform(double t_max, int steps);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  double operator[](std::size_t i) const noexcept { return times_[i]; }
  /// Index of a grid time equal to t; throws ValidationError if absent.
  std::size_t index_of(double t) const;

 private:
  std::vector<double> times_;
};

/// n_paths x grid.size() values, row-major; column 0 is X_0 = 0.
struct PathBatch {
  TimeGrid grid;
  std::size_t n_paths = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;

  double at(std::size_t path, std::size_t col) const noexcept {
    return values[path * grid.size() + col];
  }
  std::vector<double> column(std::size_t col) const;
};

struct SamplerOptions {
  /// Jumps below this size are replaced by a Gaussian with matching variance.
  double epsilon = 1e-3;
  QuadratureOptions quad{};
};

/// Draws increments X_dt for one process. Setup (masses, compensator drift,
/// small-jump variance) is done once in the constructor.
class IncrementSampler {
 public:
  /// Throws UnsupportedSamplerError for jump parts of infinite variation.
  explicit IncrementSampler(const ProcessSpec& spec, const SamplerOptions& opts = {});

  double operator()(double dt, RngStream& rng) const;

  /// Drift of the Gaussian part after moving jumps in [eps, 1) into the
  /// compound Poisson part.
  double effective_drift() const noexcept { return drift_; }
  /// sigma^2 plus the variance of the substituted small jumps.
  double gaussian_variance() const noexcept { return variance_; }
  /// Total intensity of simulated jumps.
  double jump_rate() const noexcept { return rate_; }

  struct Segment {
    enum class Kind { atom, tempered, gaussian } kind;
    double lo;
    double hi;
    double mass;
    double c_power;  // tempered: power p; gaussian: mean
    double c_rate;   // tempered: beta; gaussian: sd
  };

 private:
  double draw_jump(RngStream& rng) const;

  SamplerKind kind_;
  double drift_ = 0.0;
  double variance_ = 0.0;
  double rate_ = 0.0;
  double gamma_shape_ = 0.0;
  double gamma_rate_ = 0.0;
  std::vector<Segment> segments_;
  std::vector<double> cumulative_;
};

/// One draw of X_dt.
double sample_increment(const ProcessSpec& spec, double dt, RngStream& rng,
                        const SamplerOptions& opts = {});

/// Paths on the grid. Cell j of path i uses the stream (seed, i, j), so the
/// batch does not depend on the number of threads (LEVYMART_THREADS, default
/// hardware concurrency).
PathBatch sample_paths(const ProcessSpec& spec, const TimeGrid& grid, std::size_t n_paths,
                       std::uint64_t seed, const SamplerOptions& opts = {});

/// Worker count from LEVYMART_THREADS or the hardware.
unsigned thread_count();

struct HeavyTailDiagnostic {
  int order;
  /// Hill estimate of the tail index of |X| from the largest `k` values.
  double hill_index;
  double hill_se;
  std::size_t k;
  /// Largest |x|^order divided by the sum of all |x|^order.
  double max_share;
  /// The sample suggests E|X|^order = inf (hill_index <= order).
  bool blow_up;
};

/// Tail-index diagnostic for the moment of the given order, using the top
/// `tail_fraction` of |x|.
HeavyTailDiagnostic heavy_tail_diagnostic(const std::vector<double>& sample, int order,
                                          double tail_fraction = 0.01);

}  // namespace levy
