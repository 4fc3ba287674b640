#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "levymart/quadrature.hpp"

namespace levy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A real number or an explicit divergence marker. Divergent values carry
/// no number; asking for one throws.
class ExtendedReal {
 public:
  ExtendedReal(double v) : value_(v), finite_(true) {}  // NOLINT(implicit)
  static ExtendedReal divergent() { return ExtendedReal(); }

  bool finite() const noexcept { return finite_; }
  double value() const;
  double value_or(double fallback) const noexcept { return finite_ ? value_ : fallback; }

 private:
  ExtendedReal() : value_(kInf), finite_(false) {}
  double value_;
  bool finite_;
};

enum class ActivityClass { finite, infinite_finite_variation, infinite_infinite_variation };

std::string to_string(ActivityClass a);

struct Atom {
  double location;
  double mass;
};

/// A density piece c|y|^{-p} e^{-beta|y|} ("tempered") or rate * N(mean, sd^2)
/// ("gaussian"), restricted to an interval [lo, hi] that does not straddle 0.
class DensityPiece {
 public:
  enum class Kind { tempered, gaussian };

  static DensityPiece tempered(double c, double p, double beta, double lo, double hi);
  static DensityPiece gaussian(double rate, double mean, double sd, double lo, double hi);

  Kind kind() const noexcept { return kind_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double scale() const noexcept { return scale_; }
  double power() const noexcept { return power_; }
  double rate() const noexcept { return rate_; }
  double mean() const noexcept { return mean_; }
  double sd() const noexcept { return sd_; }

  bool positive_side() const noexcept { return lo_ >= 0.0; }
  bool touches_zero() const noexcept { return lo_ == 0.0 || hi_ == 0.0; }
  bool unbounded() const noexcept { return lo_ == -kInf || hi_ == kInf; }

  double density(double y) const;
  /// y^2 * density(y); finite as y -> 0 for every admissible piece.
  double density_y2(double y) const;
  /// log density(y); used when a growing integrand would overflow.
  double log_density(double y) const;

  /// Density behaves like |y|^{-zero_power()} as y -> 0.
  double zero_power() const noexcept;
  /// Density behaves like |y|^{-tail_power()} e^{-tail_rate()|y|} as |y| -> inf.
  double tail_rate() const noexcept;
  double tail_power() const noexcept;
  /// The density is nonincreasing in |y| beyond this magnitude.
  double monotone_from() const noexcept;

  /// Sub-intervals (in y) of this piece with r0 <= |y| < r1.
  std::vector<std::pair<double, double>> clip(double r0, double r1) const;

 private:
  DensityPiece() = default;
  Kind kind_ = Kind::tempered;
  double scale_ = 0.0;
  double power_ = 0.0;
  double rate_ = 0.0;
  double mean_ = 0.0;
  double sd_ = 1.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Band r0 <= |y| < r1 of the jump-size axis.
struct Band {
  double r0;
  double r1;

  static constexpr Band inner() { return {0.0, 1.0}; }
  static constexpr Band outer() { return {1.0, kInf}; }
  static constexpr Band all() { return {0.0, kInf}; }
  bool contains(double y) const noexcept;
};

enum class Region { inner, outer };

inline Band band_of(Region r) { return r == Region::inner ? Band::inner() : Band::outer(); }

/// Integrand for measure integrals. `over_y2` must equal value(y)/y^2 and is
/// used on bands that reach down to 0, where it is integrated against the
/// finite measure y^2 nu(dy).
struct MeasureIntegrand {
  quad::Function value;
  quad::Function over_y2;
  double period = 0.0;
  /// Optional log|value| and log|over_y2|, used if the plain product overflows.
  quad::Function log_abs_value;
  quad::Function log_abs_over_y2;
};

class LevyMeasure {
 public:
  LevyMeasure() = default;
  LevyMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensityPiece>& pieces() const noexcept { return pieces_; }
  bool is_zero() const noexcept { return atoms_.empty() && pieces_.empty(); }
  ActivityClass activity() const noexcept;
  bool supported_on_positive() const noexcept;

  /// Whether the integral of |y|^k over the band is finite.
  bool abs_moment_finite(int k, Band band) const noexcept;
  /// Whether the integral of e^{lambda y} over |y| >= 1 is finite.
  bool exp_moment_finite(double lambda) const noexcept;

  /// Integral of f against nu over the band; atoms are summed exactly.
  double integrate(const MeasureIntegrand& f, Band band,
                   const QuadratureOptions& opts = {}) const;

  /// nu(band), finite unless the band reaches an infinite-activity zero.
  double mass(Band band, const QuadratureOptions& opts = {}) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
};

}  // namespace levy
