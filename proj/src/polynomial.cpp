#include "levymart/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace levy {

double binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::monomial(int n, double c) {
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  double m = 1.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  const double threshold = kZeroThreshold * m;
  while (!c_.empty() && std::abs(c_.back()) <= threshold) c_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::max_abs() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Polynomial Polynomial::shifted(double y) const {
  // Taylor shift: p(x + y) = sum_k p_k sum_j C(k, j) y^{k-j} x^j
  std::vector<double> out(c_.size(), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      out[j] += c_[k] * binomial(static_cast<int>(k), static_cast<int>(j)) *
                std::pow(y, static_cast<double>(k - j));
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& v : c_) v *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(out));
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double rel_tol) {
  const double scale = std::max({1.0, a.max_abs(), b.max_abs()});
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i] - b[i]) > rel_tol * scale) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  os << '[';
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) os << (i ? ", " : "") << p.coeffs()[i];
  return os << ']';
}

BiPolynomial::BiPolynomial(std::vector<std::vector<double>> grid) : grid_(std::move(grid)) {
  trim();
}

void BiPolynomial::trim() {
  double m = 1.0;
  std::size_t width = 0;
  for (const auto& row : grid_) {
    width = std::max(width, row.size());
    for (double v : row) m = std::max(m, std::abs(v));
  }
  const double threshold = Polynomial::kZeroThreshold * m;
  for (auto& row : grid_) row.resize(width, 0.0);
  const auto negligible = [threshold](double v) { return std::abs(v) <= threshold; };
  while (!grid_.empty() && std::all_of(grid_.back().begin(), grid_.back().end(), negligible)) {
    grid_.pop_back();
  }
  while (width > 0 && std::all_of(grid_.begin(), grid_.end(), [&](const auto& row) {
           return negligible(row[width - 1]);
         })) {
    --width;
    for (auto& row : grid_) row.resize(width);
  }
  if (width == 0) grid_.clear();
}

double BiPolynomial::coeff(std::size_t i, std::size_t j) const noexcept {
  if (i >= grid_.size() || j >= grid_[i].size()) return 0.0;
  return grid_[i][j];
}

int BiPolynomial::t_degree() const noexcept {
  return grid_.empty() ? -1 : static_cast<int>(grid_.front().size()) - 1;
}

double BiPolynomial::operator()(double x, double t) const noexcept {
  return at_time(t)(x);
}

Polynomial BiPolynomial::t_coefficient(std::size_t j) const {
  std::vector<double> out(grid_.size(), 0.0);
  for (std::size_t i = 0; i < grid_.size(); ++i) out[i] = coeff(i, j);
  return Polynomial(std::move(out));
}

Polynomial BiPolynomial::at_time(double t) const {
  std::vector<double> out(grid_.size(), 0.0);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    double acc = 0.0;
    for (auto it = grid_[i].rbegin(); it != grid_[i].rend(); ++it) acc = acc * t + *it;
    out[i] = acc;
  }
  return Polynomial(std::move(out));
}

}  // namespace levy
