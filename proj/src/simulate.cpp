#include "levymart/simulate.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

#include "levymart/catalog.hpp"
#include "levymart/errors.hpp"

namespace levy {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty() || times_.front() != 0.0) {
    throw ValidationError("time grid must start at t = 0");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]) || !std::isfinite(times_[i])) {
      throw ValidationError("time grid must be strictly increasing and finite");
    }
  }
}

TimeGrid TimeGrid::uniform(double t_max, int steps) {
  if (!(t_max > 0.0) || steps < 1) throw ValidationError("uniform grid needs t_max > 0, steps >= 1");
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) t[static_cast<std::size_t>(i)] = t_max * i / steps;
  return TimeGrid(std::move(t));
}

std::size_t TimeGrid::index_of(double t) const {
  const auto it = std::find(times_.begin(), times_.end(), t);
  if (it == times_.end()) throw ValidationError("time " + std::to_string(t) + " is not on the grid");
  return static_cast<std::size_t>(it - times_.begin());
}

std::vector<double> PathBatch::column(std::size_t col) const {
  std::vector<double> out(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) out[i] = at(i, col);
  return out;
}

namespace {

double integrate_y(const LevyMeasure& nu, Band band, const QuadratureOptions& opts) {
  return nu.integrate({[](double y) { return y; }, [](double y) { return 1.0 / y; }, 0.0}, band,
                      opts);
}

// Magnitude r in [a, b] with density proportional to r^{-p} e^{-beta r}.
double draw_tempered(double a, double b, double p, double beta, RngStream& rng) {
  const auto power_inverse = [&](double u) {
    if (b == kInf) return a * std::pow(1.0 - u, -1.0 / (p - 1.0));
    if (p == 1.0) return a * std::pow(b / a, u);
    const double lo = std::pow(a, 1.0 - p);
    const double hi = std::pow(b, 1.0 - p);
    return std::pow(lo + u * (hi - lo), 1.0 / (1.0 - p));
  };
  const auto exp_inverse = [&](double u) {
    if (b == kInf) return a - std::log1p(-u) / beta;
    return a - std::log1p(-u * -std::expm1(-beta * (b - a))) / beta;
  };
  // Pick the proposal with the better worst-case acceptance.
  bool use_power;
  if (a == 0.0 || beta == 0.0) {
    use_power = true;
  } else if (b == kInf) {
    use_power = p > 1.0 && beta * a < p - 1.0;
  } else {
    use_power = -beta * (b - a) >= p * std::log(a / b);
  }
  for (;;) {
    const double u = rng.uniform();
    const double v = rng.uniform();
    if (use_power) {
      const double r = std::clamp(power_inverse(u), a, b);
      if (beta == 0.0 || v <= std::exp(-beta * (r - a))) return r;
    } else {
      const double r = std::clamp(exp_inverse(u), a, b);
      if (p == 0.0 || v <= std::pow(a / r, p)) return r;
    }
  }
}

// N(mean, sd^2) conditioned on [a, b].
double draw_truncated_normal(double a, double b, double mean, double sd, RngStream& rng) {
  const boost::math::normal_distribution<double> n(mean, sd);
  const double u = rng.uniform();
  double y;
  if (a >= mean) {
    const double sa = boost::math::cdf(boost::math::complement(n, a));
    const double sb = b == kInf ? 0.0 : boost::math::cdf(boost::math::complement(n, b));
    y = boost::math::quantile(boost::math::complement(n, sb + u * (sa - sb)));
  } else {
    const double fa = a == -kInf ? 0.0 : boost::math::cdf(n, a);
    const double fb = b == kInf ? 1.0 : boost::math::cdf(n, b);
    y = boost::math::quantile(n, fa + u * (fb - fa));
  }
  return std::clamp(y, a, b);
}

}  // namespace

IncrementSampler::IncrementSampler(const ProcessSpec& spec, const SamplerOptions& opts)
    : kind_(spec.sampler()) {
  const LevyTriplet& tr = spec.triplet();
  const LevyMeasure& nu = tr.measure();
  drift_ = tr.drift();
  variance_ = tr.sigma2();
  if (kind_ == SamplerKind::gaussian || nu.is_zero()) return;

  if (kind_ == SamplerKind::gamma_subordinator) {
    const DensityPiece& p = nu.pieces().front();
    gamma_shape_ = p.scale();
    gamma_rate_ = p.rate();
    drift_ -= integrate_y(nu, Band::inner(), opts.quad);
    return;
  }

  const ActivityClass activity = nu.activity();
  if (activity == ActivityClass::infinite_infinite_variation) {
    throw UnsupportedSamplerError(
        "no sampler for jump parts of infinite variation (integral of |y| near 0 diverges)");
  }
  double eps = 0.0;
  if (activity != ActivityClass::finite) {
    eps = opts.epsilon;
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("small-jump cutoff must lie in (0, 1)");
    variance_ += nu.integrate({[](double y) { return y * y; }, [](double) { return 1.0; }, 0.0},
                              Band{0.0, eps}, opts.quad);
  }
  drift_ -= integrate_y(nu, Band{eps, 1.0}, opts.quad);

  for (const Atom& a : nu.atoms()) {
    if (std::abs(a.location) >= eps) {
      segments_.push_back({Segment::Kind::atom, a.location, a.location, a.mass, 0.0, 0.0});
    }
  }
  for (const DensityPiece& piece : nu.pieces()) {
    const LevyMeasure single({}, {piece});
    for (const Band band : {Band{eps, 1.0}, Band::outer()}) {
      for (const auto& [lo, hi] : piece.clip(band.r0, band.r1)) {
        const double m = single.mass(band, opts.quad);
        if (!(m > 0.0)) continue;
        if (piece.kind() == DensityPiece::Kind::tempered) {
          segments_.push_back({Segment::Kind::tempered, lo, hi, m, piece.power(), piece.rate()});
        } else {
          segments_.push_back({Segment::Kind::gaussian, lo, hi, m, piece.mean(), piece.sd()});
        }
      }
    }
  }
  for (const Segment& s : segments_) {
    rate_ += s.mass;
    cumulative_.push_back(rate_);
  }
}

double IncrementSampler::draw_jump(RngStream& rng) const {
  const double u = rng.uniform() * rate_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const Segment& s = segments_[static_cast<std::size_t>(it - cumulative_.begin())];
  switch (s.kind) {
    case Segment::Kind::atom:
      return s.lo;
    case Segment::Kind::gaussian:
      return draw_truncated_normal(s.lo, s.hi, s.c_power, s.c_rate, rng);
    case Segment::Kind::tempered:
      if (s.lo >= 0.0) return draw_tempered(s.lo, s.hi, s.c_power, s.c_rate, rng);
      return -draw_tempered(-s.hi, -s.lo, s.c_power, s.c_rate, rng);
  }
  return 0.0;
}

double IncrementSampler::operator()(double dt, RngStream& rng) const {
  if (!(dt > 0.0)) throw ValidationError("increment length dt must be > 0");
  double x = drift_ * dt;
  if (variance_ > 0.0) x += std::normal_distribution<double>(0.0, std::sqrt(variance_ * dt))(rng);
  if (gamma_shape_ > 0.0) {
    x += std::gamma_distribution<double>(gamma_shape_ * dt, 1.0 / gamma_rate_)(rng);
  }
  if (rate_ > 0.0) {
    const auto count = std::poisson_distribution<long long>(rate_ * dt)(rng);
    for (long long i = 0; i < count; ++i) x += draw_jump(rng);
  }
  return x;
}

double sample_increment(const ProcessSpec& spec, double dt, RngStream& rng,
                        const SamplerOptions& opts) {
  return IncrementSampler(spec, opts)(dt, rng);
}

unsigned thread_count() {
  if (const char* env = std::getenv("LEVYMART_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

PathBatch sample_paths(const ProcessSpec& spec, const TimeGrid& grid, std::size_t n_paths,
                       std::uint64_t seed, const SamplerOptions& opts) {
  if (n_paths < 1) throw ValidationError("n_paths must be >= 1");
  const IncrementSampler sampler(spec, opts);
  const std::size_t width = grid.size();
  PathBatch batch{grid, n_paths, std::vector<double>(n_paths * width, 0.0), seed,
                  fingerprint(spec)};

  const auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double x = 0.0;
      for (std::size_t j = 1; j < width; ++j) {
        RngStream rng(seed, i, j);
        x += sampler(grid[j] - grid[j - 1], rng);
        batch.values[i * width + j] = x;
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(thread_count(), (n_paths + 1023) / 1024);
  if (workers <= 1 || width == 1) {
    fill(0, n_paths);
    return batch;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n_paths + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n_paths, begin + chunk);
    if (begin < end) pool.emplace_back(fill, begin, end);
  }
  for (auto& t : pool) t.join();
  return batch;
}

HeavyTailDiagnostic heavy_tail_diagnostic(const std::vector<double>& sample, int order,
                                          double tail_fraction) {
  if (order < 1) throw ValidationError("moment order must be >= 1");
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
    throw ValidationError("tail fraction must lie in (0, 1)");
  }
  std::vector<double> mags;
  mags.reserve(sample.size());
  for (double x : sample) {
    if (!std::isfinite(x)) throw ValidationError("sample contains non-finite values");
    mags.push_back(std::abs(x));
  }
  const auto k = static_cast<std::size_t>(tail_fraction * static_cast<double>(mags.size()));
  if (k < 10) throw ValidationError("sample too small for a tail estimate");
  std::sort(mags.begin(), mags.end(), std::greater<>());

  HeavyTailDiagnostic d{order, kInf, 0.0, k, 0.0, false};
  const double threshold = mags[k];
  if (threshold > 0.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += std::log(mags[i] / threshold);
    d.hill_index = acc > 0.0 ? static_cast<double>(k) / acc : kInf;
    d.hill_se = d.hill_index / std::sqrt(static_cast<double>(k));
  }
  double total = 0.0;
  for (double m : mags) total += std::pow(m, order);
  d.max_share = total > 0.0 ? std::pow(mags.front(), order) / total : 0.0;
  d.blow_up = d.hill_index <= order;
  return d;
}

}  // namespace levy
