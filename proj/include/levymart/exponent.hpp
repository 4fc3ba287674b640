#pragma once

#include <complex>
#include <string>
#include <vector>

#include "levymart/process.hpp"

namespace levy {

/// Characteristic exponent psi with E exp(i xi X_t) = exp(-t psi(xi)).
/// Throws ConvergenceError (with the achieved tolerance) when quadrature fails.
std::complex<double> eval_exponent(const ProcessSpec& spec, double xi,
                                   const QuadratureOptions& opts = {});

/// Laplace exponent eta with E exp(lambda X_t) = exp(t eta(lambda)), or a
/// divergent marker when the exponential moment is infinite.
ExtendedReal eval_laplace_exponent(const ProcessSpec& spec, double lambda,
                                   const QuadratureOptions& opts = {});

/// m_k (inner, |y| < 1) or M_k (outer, |y| >= 1) of the Lévy measure.
/// With `absolute` the integrand is |y|^k instead of y^k.
ExtendedReal measure_moments(const LevyMeasure& measure, int k, Region region,
                             const QuadratureOptions& opts = {}, bool absolute = false);

enum class SupportClass { full_line, half_line, lattice, degenerate };

std::string to_string(SupportClass s);

/// Structural classification of the support of X_t; see README for the rules.
SupportClass support_class(const ProcessSpec& spec, const QuadratureOptions& opts = {});

/// b - \int_{|y|<1} y nu(dy): the drift when no compensator is used. Requires
/// finite variation of the jump part (DomainError otherwise).
double zero_truncation_drift(const LevyTriplet& triplet, const QuadratureOptions& opts = {});

/// Optional diagnostic: grid points 0 < xi <= xi_max where |psi| is a local
/// minimum below `tol`. Not used for classification.
std::vector<double> scan_exponent_zeros(const ProcessSpec& spec, double xi_max, int points,
                                        double tol = 1e-8, const QuadratureOptions& opts = {});

}  // namespace levy
