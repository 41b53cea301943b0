#pragma once

#include "gsbdlab/piecewise.hpp"
#include "gsbdlab/types.hpp"

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace gsbdlab {

/// Composite Gauss-Legendre settings: n_gauss points per panel, n_panels panels per unit length.
struct QuadratureSpec {
  int n_gauss = 8;
  int n_panels = 16;
  int levels = 3;

  void validate() const;
};

/// Nodes and weights on [-1, 1].
template <typename Scalar>
struct GaussRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
};

/// n-point Gauss-Legendre rule via Newton iteration on P_n.
template <typename Scalar>
GaussRule<Scalar> compute_gauss_legendre(int n) {
  GaussRule<Scalar> rule;
  rule.nodes.resize(std::size_t(n));
  rule.weights.resize(std::size_t(n));
  const Scalar pi = Scalar(3.141592653589793238462643383279502884L);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = Scalar(0);
    for (int it = 0; it < 100; ++it) {
      Scalar p0 = Scalar(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((Scalar(2 * k - 1)) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1));
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < Scalar(1e-17)) break;
    }
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes[std::size_t(i)] = -x;
    rule.nodes[std::size_t(n - 1 - i)] = x;
    rule.weights[std::size_t(i)] = w;
    rule.weights[std::size_t(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[std::size_t(n / 2)] = Scalar(0);
  return rule;
}

/// Cached double-precision rule.
const GaussRule<double>& gauss_legendre(int n);

/// Panels used for a segment of the given length.
int panel_count(double length, const QuadratureSpec& spec);

namespace detail {
[[noreturn]] void throw_non_finite(double where);
}

template <typename F>
double integrate_interval(F&& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw Error(ErrorKind::InvalidParams, "integrate_interval requires a < b");
  }
  const auto& rule = gauss_legendre(spec.n_gauss);
  const int panels = panel_count(b - a, spec);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + 0.5 * h * rule.nodes[i];
      const double v = f(x);
      if (!std::isfinite(v)) detail::throw_non_finite(x);
      panel += rule.weights[i] * v;
    }
    total += 0.5 * h * panel;
  }
  return total;
}

/// Integral over the triangle (a, b, c): uniform k x k refinement and a collapsed tensor rule per subtriangle.
template <typename F>
double integrate_triangle(F&& f, const Vec2& a, const Vec2& b, const Vec2& c, const QuadratureSpec& spec) {
  spec.validate();
  const auto& rule = gauss_legendre(spec.n_gauss);
  const double longest = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  const int k = panel_count(longest, spec);
  const Vec2 e1 = (b - a) / k;
  const Vec2 e2 = (c - a) / k;
  auto sub = [&](const Vec2& p0, const Vec2& p1, const Vec2& p2) {
    const double jac = std::abs((p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x());
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double s = 0.5 * (rule.nodes[i] + 1.0);
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = 0.5 * (rule.nodes[j] + 1.0);
        const Vec2 x = p0 + s * (p1 - p0) + s * t * (p2 - p1);
        const double v = f(x);
        if (!std::isfinite(v)) detail::throw_non_finite(x.x());
        acc += 0.25 * rule.weights[i] * rule.weights[j] * s * v;
      }
    }
    return acc * jac;
  };
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; i + j < k; ++j) {
      const Vec2 p = a + i * e1 + j * e2;
      total += sub(p, p + e1, p + e2);
      if (i + j + 1 < k) total += sub(p + e1, p + e1 + e2, p + e2);
    }
  }
  return total;
}

/// Fan triangulation from the vertex centroid of a convex polygon.
template <typename F>
double integrate_polygon(F&& f, std::span<const Vec2> polygon, const QuadratureSpec& spec) {
  if (polygon.size() < 3) return 0.0;
  Vec2 centroid = Vec2::Zero();
  for (const Vec2& v : polygon) centroid += v;
  centroid /= double(polygon.size());
  double total = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i)
    total += integrate_triangle(f, centroid, polygon[i], polygon[(i + 1) % polygon.size()], spec);
  return total;
}

/// Integrals of f(x, side) over the minus and plus sides of a split rectangle.
template <typename F>
std::pair<double, double> integrate_sides(F&& f, const Field2D& field, const QuadratureSpec& spec) {
  const auto minus_poly = field.polygon(Side::Minus);
  const auto plus_poly = field.polygon(Side::Plus);
  const double minus = integrate_polygon([&](const Vec2& x) { return f(x, Side::Minus); }, minus_poly, spec);
  const double plus = integrate_polygon([&](const Vec2& x) { return f(x, Side::Plus); }, plus_poly, spec);
  return {minus, plus};
}

/// Integral of f over the rectangle, computed side by side across the chord.
template <typename F>
double integrate_rectangle_split(F&& f, const Field2D& field, const QuadratureSpec& spec) {
  const auto [minus, plus] = integrate_sides([&](const Vec2& x, Side) { return f(x); }, field, spec);
  return minus + plus;
}

/// Counting-measure integral over a finite jump set in d = 1.
template <typename F>
double integrate_jump_points(F&& f, std::span<const double> points) {
  double total = 0.0;
  for (double x : points) {
    const double v = f(x);
    if (!std::isfinite(v)) detail::throw_non_finite(x);
    total += v;
  }
  return total;
}

/// Line integral of f along the segment [p, q] with respect to arc length.
template <typename F>
double integrate_jump_segment(F&& f, const Vec2& p, const Vec2& q, const QuadratureSpec& spec) {
  const double length = (q - p).norm();
  if (!(length > 0.0)) throw Error(ErrorKind::InvalidParams, "jump segment must have positive length");
  return length * integrate_interval([&](double s) { return f(Vec2(p + s * (q - p))); }, 0.0, 1.0,
                                     QuadratureSpec{spec.n_gauss, panel_count(length, spec), spec.levels});
}

template <typename F>
double integrate_jump_segment(F&& f, const Field2D& field, const QuadratureSpec& spec) {
  return integrate_jump_segment(f, field.chord_start(), field.chord_end(), spec);
}

}  // namespace gsbdlab
