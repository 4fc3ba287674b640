#pragma once

#include <string>

#include "levymart/measure.hpp"

namespace levy {

/// Lévy triplet (b, sigma^2, nu) with the truncation function 1_{(0,1)}(|y|).
class LevyTriplet {
 public:
  LevyTriplet() = default;
  /// Validates sigma2 >= 0 and checks that the integral of min(y^2, 1)
  /// against the measure converges numerically.
  LevyTriplet(double drift, double sigma2, LevyMeasure measure,
              const QuadratureOptions& opts = {});

  double drift() const noexcept { return drift_; }
  double sigma2() const noexcept { return sigma2_; }
  const LevyMeasure& measure() const noexcept { return measure_; }
  /// Integral of min(y^2, 1) nu(dy), computed at construction.
  double truncated_second_moment() const noexcept { return weight_; }
  bool trivial() const noexcept { return drift_ == 0.0 && sigma2_ == 0.0 && measure_.is_zero(); }

 private:
  double drift_ = 0.0;
  double sigma2_ = 0.0;
  LevyMeasure measure_;
  double weight_ = 0.0;
};

enum class SamplerKind { gaussian, compound_poisson, gamma_subordinator, composite };
enum class DensitySupport { full_line, half_line_positive, unknown };

std::string to_string(SamplerKind k);
std::string to_string(DensitySupport s);
SamplerKind sampler_from_string(const std::string& s);
DensitySupport density_support_from_string(const std::string& s);

/// Catalog metadata about transition densities. These are asserted by the
/// catalog entry or the user; nothing here is derived from the triplet.
struct ProcessFlags {
  bool has_density = false;
  DensitySupport density_support = DensitySupport::unknown;
  /// Transition densities are C^1 and bounded (user-asserted).
  bool c1b_density = false;
};

class ProcessSpec {
 public:
  /// Throws ValidationError when the sampler recipe is inconsistent with the
  /// triplet (see README for the rules per recipe).
  ProcessSpec(LevyTriplet triplet, SamplerKind sampler, ProcessFlags flags = {},
              std::string name = {});

  const LevyTriplet& triplet() const noexcept { return triplet_; }
  SamplerKind sampler() const noexcept { return sampler_; }
  const ProcessFlags& flags() const noexcept { return flags_; }
  const std::string& name() const noexcept { return name_; }
  bool nontrivial() const noexcept { return !triplet_.trivial(); }

 private:
  LevyTriplet triplet_;
  SamplerKind sampler_;
  ProcessFlags flags_;
  std::string name_;
};

}  // namespace levy
