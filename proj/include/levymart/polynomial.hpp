#pragma once

#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace levy {

/// Dense real polynomial, coefficients in ascending powers. Trailing
/// coefficients with |c| <= 1e-12 * max(max|c|, 1) are trimmed on
/// construction, so degree() is the index of the last significant term.
class Polynomial {
 public:
  static constexpr double kZeroThreshold = 1e-12;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial monomial(int n, double c = 1.0);

  const std::vector<double>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Coefficient of x^i (0 beyond the degree).
  double operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0.0; }
  double operator()(double x) const noexcept;
  double max_abs() const noexcept;

  /// x -> p(x + y)
  Polynomial shifted(double y) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void trim();
  std::vector<double> c_;
};

/// Coefficient-wise |a_i - b_i| <= rel_tol * max(1, max|a|, max|b|).
bool approx_equal(const Polynomial& a, const Polynomial& b, double rel_tol);

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Bivariate polynomial sum_{i,j} c[i][j] x^i t^j on a rectangular grid.
class BiPolynomial {
 public:
  BiPolynomial() = default;
  /// grid[i][j] is the coefficient of x^i t^j; rows may be ragged on input.
  explicit BiPolynomial(std::vector<std::vector<double>> grid);

  double coeff(std::size_t i, std::size_t j) const noexcept;
  int x_degree() const noexcept { return static_cast<int>(grid_.size()) - 1; }
  int t_degree() const noexcept;
  const std::vector<std::vector<double>>& grid() const noexcept { return grid_; }

  double operator()(double x, double t) const noexcept;
  /// x-polynomial multiplying t^j.
  Polynomial t_coefficient(std::size_t j) const;
  /// x-polynomial obtained by fixing t.
  Polynomial at_time(double t) const;

 private:
  void trim();
  std::vector<std::vector<double>> grid_;
};

/// Binomial coefficient as a double (exact for the small n used here).
double binomial(int n, int k) noexcept;

}  // namespace levy
