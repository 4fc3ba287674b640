#include "levymart/process.hpp"

#include <cmath>

#include "levymart/errors.hpp"

namespace levy {

LevyTriplet::LevyTriplet(double drift, double sigma2, LevyMeasure measure,
                         const QuadratureOptions& opts)
    : drift_(drift), sigma2_(sigma2), measure_(std::move(measure)) {
  if (!std::isfinite(drift_)) throw ValidationError("drift must be finite");
  if (!(sigma2_ >= 0.0) || !std::isfinite(sigma2_)) {
    throw ValidationError("sigma2 must be finite and >= 0");
  }
  const MeasureIntegrand truncated{
      [](double y) { return std::min(y * y, 1.0); },
      [](double y) { return std::abs(y) < 1.0 ? 1.0 : 1.0 / (y * y); },
  };
  weight_ = measure_.integrate(truncated, Band::all(), opts);
  if (!std::isfinite(weight_)) {
    throw ValidationError("integral of min(y^2, 1) against the Levy measure is not finite");
  }
}

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::gaussian:
      return "gaussian";
    case SamplerKind::compound_poisson:
      return "compound-poisson";
    case SamplerKind::gamma_subordinator:
      return "gamma-subordinator";
    case SamplerKind::composite:
      return "composite";
  }
  return "composite";
}

std::string to_string(DensitySupport s) {
  switch (s) {
    case DensitySupport::full_line:
      return "full-line";
    case DensitySupport::half_line_positive:
      return "half-line-positive";
    case DensitySupport::unknown:
      return "unknown";
  }
  return "unknown";
}

SamplerKind sampler_from_string(const std::string& s) {
  if (s == "gaussian") return SamplerKind::gaussian;
  if (s == "compound-poisson") return SamplerKind::compound_poisson;
  if (s == "gamma-subordinator") return SamplerKind::gamma_subordinator;
  if (s == "composite") return SamplerKind::composite;
  throw ValidationError("unknown sampler recipe '" + s + "'");
}

DensitySupport density_support_from_string(const std::string& s) {
  if (s == "full-line") return DensitySupport::full_line;
  if (s == "half-line-positive") return DensitySupport::half_line_positive;
  if (s == "unknown" || s == "none") return DensitySupport::unknown;
  throw ValidationError("unknown density support '" + s + "'");
}

ProcessSpec::ProcessSpec(LevyTriplet triplet, SamplerKind sampler, ProcessFlags flags,
                         std::string name)
    : triplet_(std::move(triplet)), sampler_(sampler), flags_(flags), name_(std::move(name)) {
  const LevyMeasure& nu = triplet_.measure();
  switch (sampler_) {
    case SamplerKind::gaussian:
      if (!nu.is_zero()) throw ValidationError("gaussian recipe requires a zero Levy measure");
      break;
    case SamplerKind::compound_poisson:
      if (triplet_.sigma2() != 0.0) {
        throw ValidationError("compound-poisson recipe requires sigma2 = 0");
      }
      if (nu.activity() != ActivityClass::finite) {
        throw ValidationError("compound-poisson recipe requires a finite Levy measure");
      }
      break;
    case SamplerKind::gamma_subordinator: {
      const auto& pieces = nu.pieces();
      const bool ok = triplet_.sigma2() == 0.0 && nu.atoms().empty() && pieces.size() == 1 &&
                      pieces[0].kind() == DensityPiece::Kind::tempered &&
                      pieces[0].power() == 1.0 && pieces[0].rate() > 0.0 &&
                      pieces[0].lo() == 0.0 && pieces[0].hi() == kInf;
      if (!ok) {
        throw ValidationError(
            "gamma-subordinator recipe requires sigma2 = 0 and nu(dy) = c e^{-beta y}/y on "
            "(0, inf)");
      }
      break;
    }
    case SamplerKind::composite:
      break;
  }
}

}  // namespace levy
