#include "gsbdlab/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsbdlab {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidFunction, msg); }

}  // namespace

PiecewiseFn1D::PiecewiseFn1D(double x_lo, double x_hi, std::vector<double> breakpoints,
                             std::vector<std::vector<Polynomial>> pieces)
    : x_lo_(x_lo), x_hi_(x_hi), breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (!(std::isfinite(x_lo_) && std::isfinite(x_hi_) && x_lo_ < x_hi_)) invalid("domain must satisfy x_lo < x_hi");
  double prev = x_lo_;
  for (double b : breakpoints_) {
    if (!(b > prev)) invalid("breakpoints must be strictly increasing and interior");
    prev = b;
  }
  if (!breakpoints_.empty() && !(breakpoints_.back() < x_hi_)) invalid("breakpoints must be interior");
  if (pieces_.size() != breakpoints_.size() + 1) invalid("need one piece per subinterval");
  if (pieces_.front().empty()) invalid("codomain dimension must be at least 1");
  dim_ = int(pieces_.front().size());
  for (const auto& piece : pieces_) {
    if (int(piece.size()) != dim_) invalid("all pieces must share the codomain dimension");
    for (const auto& p : piece) {
      if (p.degree() > kMaxPieceDegree) invalid("piece degree exceeds the admitted maximum");
      if (!p.coefficients().allFinite()) invalid("non-finite coefficient");
    }
  }
}

PiecewiseFn1D PiecewiseFn1D::constant(double x_lo, double x_hi, const Vec& value) {
  std::vector<Polynomial> piece;
  for (Eigen::Index k = 0; k < value.size(); ++k) piece.push_back(Polynomial::constant(value(k)));
  return PiecewiseFn1D(x_lo, x_hi, {}, {piece});
}

PiecewiseFn1D PiecewiseFn1D::affine(double x_lo, double x_hi, double offset, double slope) {
  return PiecewiseFn1D(x_lo, x_hi, {}, {{Polynomial::affine(offset, slope)}});
}

PiecewiseFn1D PiecewiseFn1D::step(double x_lo, double x_hi, double at, double left, double right) {
  return PiecewiseFn1D(x_lo, x_hi, {at}, {{Polynomial::constant(left)}, {Polynomial::constant(right)}});
}

PiecewiseFn1D PiecewiseFn1D::piecewise_constant(double x_lo, double x_hi, std::vector<double> breakpoints,
                                                const std::vector<double>& values) {
  std::vector<std::vector<Polynomial>> pieces;
  for (double v : values) pieces.push_back({Polynomial::constant(v)});
  return PiecewiseFn1D(x_lo, x_hi, std::move(breakpoints), std::move(pieces));
}

std::pair<double, double> PiecewiseFn1D::piece_interval(std::size_t i) const {
  const double a = i == 0 ? x_lo_ : breakpoints_[i - 1];
  const double b = i == breakpoints_.size() ? x_hi_ : breakpoints_[i];
  return {a, b};
}

std::size_t PiecewiseFn1D::locate(double x) const {
  if (!(x >= x_lo_ && x <= x_hi_)) {
    std::ostringstream os;
    os << "x = " << x << " outside [" << x_lo_ << ", " << x_hi_ << "]";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it != breakpoints_.end() && *it == x) {
    std::ostringstream os;
    os << "x = " << x << " is a breakpoint; request traces instead";
    throw Error(ErrorKind::AmbiguousPoint, os.str());
  }
  return std::size_t(it - breakpoints_.begin());
}

Vec PiecewiseFn1D::piece_value(std::size_t i, double x) const {
  Vec out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = pieces_[i][std::size_t(k)](x);
  return out;
}

Vec PiecewiseFn1D::piece_derivative(std::size_t i, double x) const {
  Vec out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = pieces_[i][std::size_t(k)].derivative()(x);
  return out;
}

Vec PiecewiseFn1D::eval(double x) const { return piece_value(locate(x), x); }

Vec PiecewiseFn1D::derivative(double x) const { return piece_derivative(locate(x), x); }

bool Rectangle::on_boundary(const Vec2& p, double tol) const {
  const bool in_x = p.x() >= x_lo - tol && p.x() <= x_hi + tol;
  const bool in_y = p.y() >= y_lo - tol && p.y() <= y_hi + tol;
  if (!in_x || !in_y) return false;
  return std::abs(p.x() - x_lo) <= tol || std::abs(p.x() - x_hi) <= tol || std::abs(p.y() - y_lo) <= tol ||
         std::abs(p.y() - y_hi) <= tol;
}

Field2D::Field2D(Rectangle rect, Vec2 chord_start, Vec2 chord_end, Vec2 normal, AffineMap minus, AffineMap plus)
    : rect_(rect), p_(chord_start), q_(chord_end), nu_(normal), minus_(std::move(minus)), plus_(std::move(plus)) {
  if (!(rect_.x_lo < rect_.x_hi && rect_.y_lo < rect_.y_hi)) invalid("degenerate rectangle");
  if (!rect_.on_boundary(p_) || !rect_.on_boundary(q_)) invalid("chord endpoints must lie on the rectangle boundary");
  if ((q_ - p_).norm() <= 0.0) invalid("chord has zero length");
  if (std::abs(nu_.norm() - 1.0) > 1e-12) invalid("normal must have unit length");
  if (std::abs((q_ - p_).normalized().dot(nu_)) > 1e-12) invalid("normal must be orthogonal to the chord");
  const std::vector<Vec2> plus_poly = polygon(Side::Plus);
  const std::vector<Vec2> minus_poly = polygon(Side::Minus);
  if (plus_poly.size() < 3 || minus_poly.size() < 3) invalid("chord must split the rectangle into two sides");
}

Side Field2D::side(const Vec2& x) const {
  const double s = signed_distance(x);
  if (std::abs(s) <= 1e-14) throw Error(ErrorKind::AmbiguousPoint, "point lies on the jump chord");
  return s > 0 ? Side::Plus : Side::Minus;
}

Mat2 Field2D::symmetric_gradient(Side s) const {
  const Mat2& A = gradient(s);
  return 0.5 * (A + A.transpose());
}

std::vector<Vec2> Field2D::polygon(Side s) const {
  // Sutherland-Hodgman clip of the rectangle against one half-plane.
  const double sign = s == Side::Plus ? 1.0 : -1.0;
  const auto corners = rect_.corners();
  std::vector<Vec2> out;
  constexpr double eps = 1e-14;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Vec2& a = corners[i];
    const Vec2& b = corners[(i + 1) % corners.size()];
    const double da = sign * signed_distance(a);
    const double db = sign * signed_distance(b);
    if (da >= -eps) out.push_back(a);
    if ((da > eps && db < -eps) || (da < -eps && db > eps)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  // Drop consecutive duplicates produced when the chord passes through a corner.
  std::vector<Vec2> cleaned;
  for (const Vec2& v : out)
    if (cleaned.empty() || (v - cleaned.back()).norm() > 1e-14) cleaned.push_back(v);
  if (cleaned.size() > 1 && (cleaned.front() - cleaned.back()).norm() <= 1e-14) cleaned.pop_back();
  return cleaned;
}

std::vector<JumpRecord> jump_set(const PiecewiseFn1D& u, double tol) {
  std::vector<JumpRecord> out;
  for (std::size_t b = 0; b < u.breakpoints().size(); ++b) {
    Vec lo = u.trace_minus(b);
    Vec hi = u.trace_plus(b);
    const double amp = (hi - lo).norm();
    if (amp <= tol) continue;
    out.push_back(JumpRecord{vec1(u.breakpoints()[b]), std::move(lo), std::move(hi), vec1(1.0), amp});
  }
  return out;
}

std::vector<JumpRecord> jump_set(const Field2D& u, int samples, double tol) {
  std::vector<JumpRecord> out;
  for (int i = 0; i < samples; ++i) {
    const double s = (i + 0.5) / samples;
    const Vec2 y = u.chord_point(s);
    const Vec2 lo = u.trace_minus(y);
    const Vec2 hi = u.trace_plus(y);
    const double amp = (hi - lo).norm();
    if (amp <= tol) continue;
    out.push_back(JumpRecord{Vec(y), Vec(lo), Vec(hi), Vec(u.normal()), amp});
  }
  return out;
}

Vec symmetric_gradient(const PiecewiseFn1D& u, double x) { return u.derivative(x); }

Mat2 symmetric_gradient(const Field2D& u, const Vec2& x) { return u.symmetric_gradient(x); }

double measure_convergence_gap(const PiecewiseFn1D& u, const PiecewiseFn1D& v, double delta, double root_tol) {
  if (!u.same_domain(v)) throw Error(ErrorKind::DomainMismatch, "functions differ in domain or codomain dimension");
  std::vector<double> knots{u.x_lo()};
  std::merge(u.breakpoints().begin(), u.breakpoints().end(), v.breakpoints().begin(), v.breakpoints().end(),
             std::back_inserter(knots));
  knots.push_back(u.x_hi());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  double measure = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double mid = 0.5 * (a + b);
    const std::size_t iu = u.locate(mid), iv = v.locate(mid);
    std::vector<Polynomial> diff;
    for (int k = 0; k < u.dim(); ++k) diff.push_back(u.piece(iu, k) - v.piece(iv, k));

    std::vector<double> cuts{a};
    auto add_roots = [&](const Polynomial& p) {
      for (double r : real_roots(p, a, b, root_tol)) cuts.push_back(r);
    };
    if (u.dim() == 1) {
      add_roots(diff[0] - Polynomial::constant(delta));
      add_roots(diff[0] + Polynomial::constant(delta));
    } else {
      Polynomial sq = Polynomial::constant(-delta * delta);
      for (const auto& d : diff) sq = sq + d * d;
      add_roots(sq);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double lo = cuts[c], hi = cuts[c + 1];
      if (hi <= lo) continue;
      const double m = 0.5 * (lo + hi);
      double norm2 = 0.0;
      for (const auto& d : diff) norm2 += d(m) * d(m);
      if (std::sqrt(norm2) > delta) measure += hi - lo;
    }
  }
  return measure;
}

double ky_fan_distance(const PiecewiseFn1D& u, const PiecewiseFn1D& v, double resolution) {
  // gap(delta) - delta is strictly decreasing in delta; bisect on its sign.
  double lo = 0.0;
  double hi = std::max(1.0, u.x_hi() - u.x_lo());
  while (measure_convergence_gap(u, v, hi) > hi) hi *= 2.0;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (measure_convergence_gap(u, v, mid) <= mid)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace gsbdlab
