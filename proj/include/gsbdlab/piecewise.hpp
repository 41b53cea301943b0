#pragma once

#include "gsbdlab/polynomial.hpp"
#include "gsbdlab/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace gsbdlab {

/// Absolute threshold on |u+ - u-| below which a breakpoint is a removable node.
inline constexpr double kJumpTolerance = 1e-10;
/// Highest polynomial degree admitted in a piece.
inline constexpr int kMaxPieceDegree = 8;

/// Jump data at one point of J_u. In d = 1 the normal is +1 and trace_minus is the left limit.
struct JumpRecord {
  Vec location;
  Vec trace_minus;
  Vec trace_plus;
  Vec normal;
  double amplitude = 0.0;
};

/// Vector-valued piecewise polynomial on [x_lo, x_hi] with finitely many breakpoints.
/// Polynomials are expressed in the global coordinate x. No value is stored at a breakpoint;
/// callers ask for one-sided traces there.
class PiecewiseFn1D {
 public:
  /// pieces[i][k] is coordinate k on the i-th subinterval.
  PiecewiseFn1D(double x_lo, double x_hi, std::vector<double> breakpoints,
                std::vector<std::vector<Polynomial>> pieces);

  static PiecewiseFn1D constant(double x_lo, double x_hi, const Vec& value);
  static PiecewiseFn1D constant(double x_lo, double x_hi, double value) { return constant(x_lo, x_hi, vec1(value)); }
  static PiecewiseFn1D affine(double x_lo, double x_hi, double offset, double slope);
  /// Scalar step: `left` on [x_lo, at), `right` on (at, x_hi].
  static PiecewiseFn1D step(double x_lo, double x_hi, double at, double left, double right);
  /// Scalar piecewise constant with the given interior breakpoints.
  static PiecewiseFn1D piecewise_constant(double x_lo, double x_hi, std::vector<double> breakpoints,
                                          const std::vector<double>& values);

  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  int dim() const { return dim_; }
  std::size_t num_pieces() const { return pieces_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<Polynomial>>& pieces() const { return pieces_; }
  const Polynomial& piece(std::size_t i, int coord = 0) const { return pieces_[i][std::size_t(coord)]; }
  /// Closed subinterval governed by piece i.
  std::pair<double, double> piece_interval(std::size_t i) const;

  /// Index of the piece governing x; throws OutOfDomain / AmbiguousPoint.
  std::size_t locate(double x) const;

  Vec eval(double x) const;
  Vec derivative(double x) const;
  /// Evaluates the polynomial of piece i at any x (no domain checks).
  Vec piece_value(std::size_t i, double x) const;
  Vec piece_derivative(std::size_t i, double x) const;

  /// Left and right limits at breakpoint b (index into breakpoints()).
  Vec trace_minus(std::size_t b) const { return piece_value(b, breakpoints_[b]); }
  Vec trace_plus(std::size_t b) const { return piece_value(b + 1, breakpoints_[b]); }

  /// Limit from the right at x_lo and from the left at x_hi.
  Vec value_at_lower_end() const { return piece_value(0, x_lo_); }
  Vec value_at_upper_end() const { return piece_value(pieces_.size() - 1, x_hi_); }

  bool same_domain(const PiecewiseFn1D& other) const {
    return x_lo_ == other.x_lo_ && x_hi_ == other.x_hi_ && dim_ == other.dim_;
  }

 private:
  double x_lo_;
  double x_hi_;
  int dim_ = 1;
  std::vector<double> breakpoints_;
  std::vector<std::vector<Polynomial>> pieces_;
};

struct Rectangle {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;

  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
  bool on_boundary(const Vec2& p, double tol = 1e-12) const;
  std::array<Vec2, 4> corners() const {
    return {Vec2(x_lo, y_lo), Vec2(x_hi, y_lo), Vec2(x_hi, y_hi), Vec2(x_lo, y_hi)};
  }
};

/// x -> A x + b
struct AffineMap {
  Mat2 A = Mat2::Zero();
  Vec2 b = Vec2::Zero();

  Vec2 operator()(const Vec2& x) const { return A * x + b; }
};

enum class Side { Minus, Plus };

/// Rectangle cut by one straight chord, with an affine displacement on each side.
/// The normal points from the minus side to the plus side.
class Field2D {
 public:
  Field2D(Rectangle rect, Vec2 chord_start, Vec2 chord_end, Vec2 normal, AffineMap minus, AffineMap plus);

  const Rectangle& rectangle() const { return rect_; }
  const Vec2& chord_start() const { return p_; }
  const Vec2& chord_end() const { return q_; }
  const Vec2& normal() const { return nu_; }
  const AffineMap& map(Side s) const { return s == Side::Minus ? minus_ : plus_; }
  double chord_length() const { return (q_ - p_).norm(); }

  /// Signed distance to the chord line, positive on the plus side.
  double signed_distance(const Vec2& x) const { return (x - p_).dot(nu_); }
  Side side(const Vec2& x) const;

  Vec2 eval(const Vec2& x) const { return map(side(x))(x); }
  const Mat2& gradient(Side s) const { return map(s).A; }
  Mat2 symmetric_gradient(Side s) const;
  Mat2 symmetric_gradient(const Vec2& x) const { return symmetric_gradient(side(x)); }

  /// Point on the chord at arc parameter s in [0, 1].
  Vec2 chord_point(double s) const { return p_ + s * (q_ - p_); }
  Vec2 trace_minus(const Vec2& y) const { return minus_(y); }
  Vec2 trace_plus(const Vec2& y) const { return plus_(y); }

  /// Vertices of the closed polygon occupied by one side, counter-clockwise.
  std::vector<Vec2> polygon(Side s) const;

 private:
  Rectangle rect_;
  Vec2 p_, q_, nu_;
  AffineMap minus_, plus_;
};

/// Jump points of u ordered by location.
std::vector<JumpRecord> jump_set(const PiecewiseFn1D& u, double tol = kJumpTolerance);
/// Jump records at `samples` equispaced interior chord points, ordered by arc length.
std::vector<JumpRecord> jump_set(const Field2D& u, int samples = 9, double tol = kJumpTolerance);

/// u'(x) in d = 1 (one entry per codomain coordinate).
Vec symmetric_gradient(const PiecewiseFn1D& u, double x);
/// (A + A^T) / 2 of the side containing x.
Mat2 symmetric_gradient(const Field2D& u, const Vec2& x);

/// Lebesgue measure of {x : |u(x) - v(x)| > delta}, by exact root isolation per piece.
double measure_convergence_gap(const PiecewiseFn1D& u, const PiecewiseFn1D& v, double delta,
                               double root_tol = 1e-14);

/// Ky Fan distance inf{delta > 0 : gap(u, v, delta) <= delta}, a metric for convergence in measure.
double ky_fan_distance(const PiecewiseFn1D& u, const PiecewiseFn1D& v, double resolution = 1e-12);

}  // namespace gsbdlab
