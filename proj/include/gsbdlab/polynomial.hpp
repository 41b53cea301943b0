#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace gsbdlab {

/// Dense univariate polynomial with coefficients stored low-degree-first.
template <typename Scalar>
class BasicPolynomial {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicPolynomial() : coeffs_(Coefficients::Zero(1)) {}
  explicit BasicPolynomial(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = Coefficients::Zero(1);
  }
  BasicPolynomial(std::initializer_list<Scalar> coeffs) : coeffs_(Coefficients(Eigen::Index(coeffs.size()))) {
    Eigen::Index i = 0;
    for (Scalar c : coeffs) coeffs_(i++) = c;
    if (coeffs_.size() == 0) coeffs_ = Coefficients::Zero(1);
  }

  static BasicPolynomial constant(Scalar c) { return BasicPolynomial{c}; }
  /// slope * x + offset
  static BasicPolynomial affine(Scalar offset, Scalar slope) { return BasicPolynomial{offset, slope}; }

  const Coefficients& coefficients() const { return coeffs_; }

  /// Index of the highest non-zero coefficient (0 for the zero polynomial).
  int degree() const {
    for (Eigen::Index i = coeffs_.size() - 1; i > 0; --i)
      if (coeffs_(i) != Scalar(0)) return int(i);
    return 0;
  }

  bool is_zero() const { return degree() == 0 && coeffs_(0) == Scalar(0); }

  Scalar operator()(Scalar x) const {
    Scalar acc(0);
    for (Eigen::Index i = coeffs_.size() - 1; i >= 0; --i) acc = acc * x + coeffs_(i);
    return acc;
  }

  BasicPolynomial derivative() const {
    if (coeffs_.size() <= 1) return BasicPolynomial{};
    Coefficients d(coeffs_.size() - 1);
    for (Eigen::Index i = 1; i < coeffs_.size(); ++i) d(i - 1) = Scalar(i) * coeffs_(i);
    return BasicPolynomial(d);
  }

  /// Antiderivative vanishing at zero.
  BasicPolynomial antiderivative() const {
    Coefficients a = Coefficients::Zero(coeffs_.size() + 1);
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) a(i + 1) = coeffs_(i) / Scalar(i + 1);
    return BasicPolynomial(a);
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    const Eigen::Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
    Coefficients c = Coefficients::Zero(n);
    c.head(a.coeffs_.size()) += a.coeffs_;
    c.head(b.coeffs_.size()) += b.coeffs_;
    return BasicPolynomial(c);
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a) { return BasicPolynomial(Coefficients(-a.coeffs_)); }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return a + (-b); }
  friend BasicPolynomial operator*(Scalar s, const BasicPolynomial& a) { return BasicPolynomial(Coefficients(s * a.coeffs_)); }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    Coefficients c = Coefficients::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
      for (Eigen::Index j = 0; j < b.coeffs_.size(); ++j) c(i + j) += a.coeffs_(i) * b.coeffs_(j);
    return BasicPolynomial(c);
  }

  /// Substitution x -> x - shift.
  BasicPolynomial shifted(Scalar shift) const {
    BasicPolynomial out;
    BasicPolynomial lin{-shift, Scalar(1)};
    BasicPolynomial power{Scalar(1)};
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      out = out + coeffs_(i) * power;
      power = power * lin;
    }
    return out;
  }

 private:
  Coefficients coeffs_;
};

using Polynomial = BasicPolynomial<double>;

namespace detail {

template <typename Scalar>
Scalar bisect_root(const BasicPolynomial<Scalar>& p, Scalar lo, Scalar hi, Scalar tol) {
  Scalar flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    const Scalar fm = p(mid);
    if (fm == Scalar(0)) return mid;
    if ((fm < Scalar(0)) == (flo < Scalar(0))) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return Scalar(0.5) * (lo + hi);
}

}  // namespace detail

/// Real roots of p in the closed interval [lo, hi], ascending, located to within tol.
/// The zero polynomial has no isolated roots and yields an empty list.
template <typename Scalar>
std::vector<Scalar> real_roots(const BasicPolynomial<Scalar>& p, Scalar lo, Scalar hi, Scalar tol = Scalar(1e-14)) {
  std::vector<Scalar> roots;
  const int deg = p.degree();
  if (deg == 0 || lo > hi) return roots;
  const auto& c = p.coefficients();
  if (deg == 1) {
    const Scalar r = -c(0) / c(1);
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }
  // p is monotone between consecutive critical points.
  std::vector<Scalar> knots{lo};
  for (Scalar r : real_roots(p.derivative(), lo, hi, tol))
    if (r > knots.back()) knots.push_back(r);
  if (hi > knots.back()) knots.push_back(hi);

  auto push = [&](Scalar r) {
    if (roots.empty() || r - roots.back() > tol) roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Scalar a = knots[i], b = knots[i + 1];
    const Scalar fa = p(a), fb = p(b);
    if (fa == Scalar(0)) push(a);
    if (fa != Scalar(0) && fb != Scalar(0) && ((fa < Scalar(0)) != (fb < Scalar(0))))
      push(detail::bisect_root(p, a, b, tol));
    if (fb == Scalar(0)) push(b);
  }
  if (knots.size() == 1 && p(lo) == Scalar(0)) push(lo);
  return roots;
}

}  // namespace gsbdlab
