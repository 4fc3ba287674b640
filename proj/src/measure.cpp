#include "levymart/measure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "levymart/errors.hpp"

namespace levy {

double ExtendedReal::value() const {
  if (!finite_) throw DomainError("value requested from a divergent integral");
  return value_;
}

std::string to_string(ActivityClass a) {
  switch (a) {
    case ActivityClass::finite:
      return "finite";
    case ActivityClass::infinite_finite_variation:
      return "infinite-finite-variation";
    case ActivityClass::infinite_infinite_variation:
      return "infinite-infinite-variation";
  }
  return "unknown";
}

namespace {

void check_interval(double lo, double hi) {
  if (!(lo < hi) || std::isnan(lo) || std::isnan(hi)) {
    throw ValidationError("density piece needs lo < hi");
  }
  if (lo < 0.0 && hi > 0.0) {
    throw ValidationError("density piece must not contain 0; split it at the origin");
  }
}

}  // namespace

DensityPiece DensityPiece::tempered(double c, double p, double beta, double lo, double hi) {
  check_interval(lo, hi);
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("tempered piece: c must be > 0");
  if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("tempered piece: p must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("tempered piece: beta must be >= 0");
  }
  DensityPiece d;
  d.kind_ = Kind::tempered;
  d.scale_ = c;
  d.power_ = p;
  d.rate_ = beta;
  d.lo_ = lo;
  d.hi_ = hi;
  if (d.touches_zero() && p >= 3.0) {
    throw ValidationError("tempered piece: integral of y^2 near 0 diverges (need p < 3)");
  }
  if (d.unbounded() && beta == 0.0 && p <= 1.0) {
    throw ValidationError("tempered piece: tail mass diverges (need beta > 0 or p > 1)");
  }
  return d;
}

DensityPiece DensityPiece::gaussian(double rate, double mean, double sd, double lo, double hi) {
  check_interval(lo, hi);
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ValidationError("gaussian piece: rate > 0");
  if (!(sd > 0.0) || !std::isfinite(sd)) throw ValidationError("gaussian piece: sd > 0");
  if (!std::isfinite(mean)) throw ValidationError("gaussian piece: mean must be finite");
  DensityPiece d;
  d.kind_ = Kind::gaussian;
  d.scale_ = rate;
  d.mean_ = mean;
  d.sd_ = sd;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

double DensityPiece::density(double y) const {
  if (kind_ == Kind::gaussian) {
    const double z = (y - mean_) / sd_;
    return scale_ * std::exp(-0.5 * z * z) / (sd_ * std::sqrt(2.0 * std::numbers::pi));
  }
  const double a = std::abs(y);
  return scale_ * std::pow(a, -power_) * std::exp(-rate_ * a);
}

double DensityPiece::density_y2(double y) const {
  if (kind_ == Kind::gaussian) return y * y * density(y);
  const double a = std::abs(y);
  return scale_ * std::pow(a, 2.0 - power_) * std::exp(-rate_ * a);
}

double DensityPiece::log_density(double y) const {
  if (kind_ == Kind::gaussian) {
    const double z = (y - mean_) / sd_;
    return std::log(scale_) - 0.5 * z * z - std::log(sd_ * std::sqrt(2.0 * std::numbers::pi));
  }
  const double a = std::abs(y);
  return std::log(scale_) - power_ * std::log(a) - rate_ * a;
}

double DensityPiece::zero_power() const noexcept {
  return kind_ == Kind::gaussian ? 0.0 : power_;
}

double DensityPiece::tail_rate() const noexcept {
  return kind_ == Kind::gaussian ? kInf : rate_;
}

double DensityPiece::tail_power() const noexcept {
  return kind_ == Kind::gaussian ? 0.0 : power_;
}

double DensityPiece::monotone_from() const noexcept {
  if (kind_ == Kind::tempered) return 0.0;
  return positive_side() ? std::max(0.0, mean_) : std::max(0.0, -mean_);
}

std::vector<std::pair<double, double>> DensityPiece::clip(double r0, double r1) const {
  std::vector<std::pair<double, double>> out;
  double a = 0.0;
  double b = 0.0;
  if (positive_side()) {
    a = std::max(lo_, r0);
    b = std::min(hi_, r1);
  } else {
    a = std::max(lo_, -r1);
    b = std::min(hi_, -r0);
  }
  if (a < b) out.emplace_back(a, b);
  return out;
}

bool Band::contains(double y) const noexcept {
  const double a = std::abs(y);
  return a >= r0 && a < r1;
}

LevyMeasure::LevyMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.location) || a.location == 0.0) {
      throw ValidationError("Levy measure atoms must sit at finite y != 0");
    }
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw ValidationError("Levy measure atoms need finite mass > 0");
    }
  }
}

ActivityClass LevyMeasure::activity() const noexcept {
  double worst = -1.0;
  for (const DensityPiece& p : pieces_) {
    if (p.touches_zero()) worst = std::max(worst, p.zero_power());
  }
  if (worst >= 2.0) return ActivityClass::infinite_infinite_variation;
  if (worst >= 1.0) return ActivityClass::infinite_finite_variation;
  return ActivityClass::finite;
}

bool LevyMeasure::supported_on_positive() const noexcept {
  for (const Atom& a : atoms_) {
    if (a.location < 0.0) return false;
  }
  for (const DensityPiece& p : pieces_) {
    if (!p.positive_side()) return false;
  }
  return true;
}

bool LevyMeasure::abs_moment_finite(int k, Band band) const noexcept {
  const auto kd = static_cast<double>(k);
  for (const DensityPiece& p : pieces_) {
    for (const auto& [a, b] : p.clip(band.r0, band.r1)) {
      if ((a == 0.0 || b == 0.0) && !(kd - p.zero_power() > -1.0)) return false;
      if ((a == -kInf || b == kInf) && !(p.tail_rate() > 0.0 || kd - p.tail_power() < -1.0)) {
        return false;
      }
    }
  }
  return true;
}

bool LevyMeasure::exp_moment_finite(double lambda) const noexcept {
  for (const DensityPiece& p : pieces_) {
    if (!p.unbounded()) continue;
    const double net = p.tail_rate() - (p.positive_side() ? lambda : -lambda);
    if (net < 0.0) return false;
    if (net == 0.0 && !(p.tail_power() > 1.0)) return false;
  }
  return true;
}

double LevyMeasure::integrate(const MeasureIntegrand& f, Band band,
                              const QuadratureOptions& opts) const {
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (band.contains(a.location)) total += a.mass * f.value(a.location);
  }
  for (const DensityPiece& p : pieces_) {
    // Split at |y| = 1 so the y^2-weighted form is only used near the origin.
    for (const Band sub : {Band{band.r0, std::min(band.r1, 1.0)},
                           Band{std::max(band.r0, 1.0), band.r1}}) {
      if (!(sub.r0 < sub.r1)) continue;
      for (const auto& [a, b] : p.clip(sub.r0, sub.r1)) {
        const bool near_zero = (a == 0.0 || b == 0.0) && static_cast<bool>(f.over_y2);
        // Far in the tail the density underflows first; when it does not,
        // fall back to log space so inf * tiny never happens.
        const auto product = [](double v, double d, const quad::Function& log_v, double log_d,
                                double y) {
          if (d == 0.0) return 0.0;
          const double r = v * d;
          if (std::isfinite(r) || !log_v) return r;
          return std::copysign(std::exp(log_v(y) + log_d), v);
        };
        const quad::Function g =
            near_zero ? quad::Function([&](double y) {
              const double d = p.density_y2(y);
              if (d == 0.0) return 0.0;
              return product(f.over_y2(y), d, f.log_abs_over_y2,
                             p.log_density(y) + 2.0 * std::log(std::abs(y)), y);
            })
                      : quad::Function([&](double y) {
                          const double d = p.density(y);
                          if (d == 0.0) return 0.0;
                          return product(f.value(y), d, f.log_abs_value, p.log_density(y), y);
                        });
        if (b == kInf) {
          total += quad::half_line(g, a, opts);
        } else if (a == -kInf) {
          total += quad::half_line([&](double u) { return g(-u); }, -b, opts);
        } else {
          total += quad::finite(g, a, b, opts, f.period);
        }
      }
    }
  }
  return total;
}

double LevyMeasure::mass(Band band, const QuadratureOptions& opts) const {
  if (!abs_moment_finite(0, band)) return kInf;
  return integrate({[](double) { return 1.0; }, {}, 0.0}, band, opts);
}

}  // namespace levy
