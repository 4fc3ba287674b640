#pragma once

#include <stdexcept>
#include <string>

namespace levy {

/// Invalid user input: malformed specs, bad arguments, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature or iterative solver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  /// Error estimate that was actually reached.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A required moment of the Lévy measure is infinite.
class InfiniteMomentError : public std::domain_error {
 public:
  InfiniteMomentError(const std::string& what, int order)
      : std::domain_error(what), order_(order) {}

  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// Argument outside the domain where an operation is defined
/// (e.g. an exponential rate outside the exponential-moment domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The process cannot be sampled by any available recipe.
class UnsupportedSamplerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace levy
