#pragma once

#include "levymart/polynomial.hpp"

namespace levy {

/// x (x - y) (x - 2y) ... (x - (k-1) y), monic of degree k.
class FallingFactorialBasis {
 public:
  FallingFactorialBasis(double step, int order);

  double step() const noexcept { return step_; }
  int order() const noexcept { return order_; }
  const Polynomial& expanded() const noexcept { return poly_; }

 private:
  double step_;
  int order_;
  Polynomial poly_;
};

/// q(x + y) - q(x).
Polynomial difference(const Polynomial& q, double y);

/// The solution q of q(x + y) - q(x) = p with q(0) = 0; deg q = deg p + 1.
Polynomial frechet_solve(const Polynomial& p, double y);

struct GeneralSolutionCheck {
  bool holds;
  /// The two differences disagree, so the implication holds vacuously.
  bool premise_false;
};

/// Equal differences at step y force q1 - q2 to be constant.
GeneralSolutionCheck verify_general_solution(const Polynomial& q1, const Polynomial& q2, double y,
                                             double rel_tol = 1e-9);

}  // namespace levy
