#include "gsbdlab/chainrule.hpp"

#include <algorithm>
#include <cmath>

namespace gsbdlab {

namespace test_functions {

TestFunction bubble(double x_lo, double x_hi, double scale) {
  TestFunction f;
  f.dim = 1;
  f.value = [=](const VecRef& x) { return scale * (x(0) - x_lo) * (x_hi - x(0)); };
  f.gradient = [=](const VecRef& x) { return vec1(scale * (x_lo + x_hi - 2 * x(0))); };
  return f;
}

TestFunction bubble(const Rectangle& rect, double scale) {
  TestFunction f;
  f.dim = 2;
  auto b = [](double s, double lo, double hi) { return (s - lo) * (hi - s); };
  auto db = [](double s, double lo, double hi) { return lo + hi - 2 * s; };
  f.value = [=](const VecRef& x) { return scale * b(x(0), rect.x_lo, rect.x_hi) * b(x(1), rect.y_lo, rect.y_hi); };
  f.gradient = [=](const VecRef& x) {
    return vec2(scale * db(x(0), rect.x_lo, rect.x_hi) * b(x(1), rect.y_lo, rect.y_hi),
                scale * b(x(0), rect.x_lo, rect.x_hi) * db(x(1), rect.y_lo, rect.y_hi));
  };
  return f;
}

TestFunction zero(int dim) {
  TestFunction f;
  f.dim = dim;
  f.value = [](const VecRef&) { return 0.0; };
  f.gradient = [dim](const VecRef&) { return Vec(Vec::Zero(dim)); };
  return f;
}

}  // namespace test_functions

namespace {

void validate_on(const VectorFieldNA& g, const SamplingBox& box, const ChainRuleOptions& opts) {
  if (!opts.validate) return;
  for (Condition c : {Condition::G1, Condition::G2, Condition::G3, Condition::G4, Condition::G5, Condition::G6})
    if (!g.declares(c))
      throw Error(ErrorKind::ConditionViolation, "field '" + g.name + "' does not declare " + std::string(to_string(c)));
  const ConditionReport rep = validate_conditions(g, box, opts.validate_grid, opts.validate_grid);
  for (const auto& r : rep.results)
    if (!r.passed)
      throw Error(ErrorKind::ConditionViolation,
                  "field '" + g.name + "' fails " + std::string(to_string(r.condition)) + " (" + r.detail + ")");
}

void finish(ChainRuleLedger& l) {
  l.residual = l.lhs - (l.term_divx + l.term_e + l.term_jump);
  for (double v : {l.lhs, l.term_divx, l.term_e, l.term_jump, l.residual})
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteIntegrand, "chain rule ledger entry is not finite");
}

}  // namespace

ChainRuleLedger chain_rule_ledger(const VectorFieldNA& g, const PiecewiseFn1D& u, const TestFunction& phi,
                                  const QuadratureSpec& quad, const ChainRuleOptions& opts) {
  if (g.dim != 1 || u.dim() != 1 || phi.dim != 1)
    throw Error(ErrorKind::DimensionMismatch, "the 1D ledger needs scalar u, g and test function");
  const double a = u.x_lo(), b = u.x_hi();
  if (std::abs(phi.value(vec1(a))) > 1e-12 || std::abs(phi.value(vec1(b))) > 1e-12)
    throw Error(ErrorKind::BoundarySupport, "test function does not vanish on the boundary");
  const auto jumps = jump_set(u);
  for (const auto& j : jumps)
    for (const Vec& e : g.exceptional_points)
      if (std::abs(e(0) - j.location(0)) <= 1e-12)
        throw Error(ErrorKind::ExceptionalCollision, "a jump of u sits on an exceptional point of g");

  // Working box: the domain times the range of u.
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < u.num_pieces(); ++i) {
    const auto [pa, pb] = u.piece_interval(i);
    for (int k = 0; k <= 64; ++k) {
      const double v = u.piece_value(i, pa + (pb - pa) * k / 64.0)(0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  validate_on(g, SamplingBox::cube(1, a, b, lo, hi), opts);

  ChainRuleLedger l;
  l.quad = quad;
  for (std::size_t i = 0; i < u.num_pieces(); ++i) {
    const auto [pa, pb] = u.piece_interval(i);
    Vec x(1);
    l.lhs -= integrate_interval(
        [&](double s) {
          x(0) = s;
          return g.value(x, u.piece_value(i, s)).dot(phi.gradient(x));
        },
        pa, pb, quad);
    l.term_divx += integrate_interval(
        [&](double s) {
          x(0) = s;
          return phi.value(x) * g.divergence_x(x, u.piece_value(i, s));
        },
        pa, pb, quad);
    l.term_e += integrate_interval(
        [&](double s) {
          x(0) = s;
          const Vec du = u.piece_derivative(i, s);
          if (du(0) == 0.0) return 0.0;
          return phi.value(x) * g.grad_r(x, u.piece_value(i, s))(0, 0) * du(0);
        },
        pa, pb, quad);
  }
  for (const auto& j : jumps)
    l.term_jump += phi.value(j.location) *
                   (g.value(j.location, j.trace_plus) - g.value(j.location, j.trace_minus)).dot(j.normal);
  finish(l);
  return l;
}

ChainRuleLedger chain_rule_ledger(const VectorFieldNA& g, const Field2D& u, const TestFunction& phi,
                                  const QuadratureSpec& quad, const ChainRuleOptions& opts) {
  if (g.dim != 2 || phi.dim != 2) throw Error(ErrorKind::DimensionMismatch, "the 2D ledger needs d = 2 data");
  const Rectangle& rect = u.rectangle();
  for (int k = 0; k <= 32; ++k) {
    const double s = k / 32.0;
    const double xs = rect.x_lo + s * (rect.x_hi - rect.x_lo), ys = rect.y_lo + s * (rect.y_hi - rect.y_lo);
    for (const Vec& p : {vec2(xs, rect.y_lo), vec2(xs, rect.y_hi), vec2(rect.x_lo, ys), vec2(rect.x_hi, ys)})
      if (std::abs(phi.value(p)) > 1e-12)
        throw Error(ErrorKind::BoundarySupport, "test function does not vanish on the boundary");
  }
  const Vec2 p = u.chord_start(), q = u.chord_end();
  for (const Vec& e : g.exceptional_points) {
    if (e.size() != 2) continue;
    const Vec2 y = e;
    const double s = std::clamp((y - p).dot(q - p) / (q - p).squaredNorm(), 0.0, 1.0);
    if ((p + s * (q - p) - y).norm() <= 1e-12)
      throw Error(ErrorKind::ExceptionalCollision, "the jump set of u meets an exceptional point of g");
  }

  // Working box: the rectangle times the bounding box of u's values at the corners.
  Vec2 lo = Vec2::Constant(INFINITY), hi = Vec2::Constant(-INFINITY);
  for (Side s : {Side::Minus, Side::Plus})
    for (const Vec2& c : u.polygon(s)) {
      const Vec2 v = u.map(s)(c);
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  for (int c = 0; c < 2; ++c)
    if (hi(c) - lo(c) < 1e-9) {
      lo(c) -= 0.5;
      hi(c) += 0.5;
    }
  validate_on(g, SamplingBox{vec2(rect.x_lo, rect.y_lo), vec2(rect.x_hi, rect.y_hi), lo, hi}, opts);

  ChainRuleLedger l;
  l.quad = quad;
  auto side_integral = [&](auto&& f) {
    const auto [m, pl] = integrate_sides(f, u, quad);
    return m + pl;
  };
  l.lhs = -side_integral([&](const Vec2& x, Side s) {
    const Vec xv = x;
    return g.value(xv, Vec(u.map(s)(x))).dot(phi.gradient(xv));
  });
  l.term_divx = side_integral([&](const Vec2& x, Side s) {
    const Vec xv = x;
    return phi.value(xv) * g.divergence_x(xv, Vec(u.map(s)(x)));
  });
  l.term_e = side_integral([&](const Vec2& x, Side s) {
    const Vec xv = x;
    const Mat2 e = u.symmetric_gradient(s);
    if (e.isZero(0.0)) return 0.0;
    return phi.value(xv) * (g.grad_r(xv, Vec(u.map(s)(x))).array() * e.array()).sum();
  });
  const Vec nu = u.normal();
  l.term_jump = integrate_jump_segment(
      [&](const Vec2& y) {
        const Vec yv = y;
        return phi.value(yv) * (g.value(yv, Vec(u.trace_plus(y))) - g.value(yv, Vec(u.trace_minus(y)))).dot(nu);
      },
      u, quad);
  finish(l);
  return l;
}

std::vector<ConvergenceRow> residual_convergence(const VectorFieldNA& g, const PiecewiseFn1D& u,
                                                 const TestFunction& phi, int levels, const QuadratureSpec& base,
                                                 const ChainRuleOptions& opts) {
  if (levels < 3) throw Error(ErrorKind::InvalidParams, "a convergence study needs at least 3 levels");
  std::vector<ConvergenceRow> out;
  ChainRuleOptions o = opts;
  for (int k = 0; k < levels; ++k) {
    QuadratureSpec q = base;
    q.n_panels = base.n_panels << k;
    out.push_back({q.n_panels, std::abs(chain_rule_ledger(g, u, phi, q, o).residual)});
    o.validate = false;  // the field does not change between levels
  }
  return out;
}

double trace_discrepancy(const MatRef& S, const MatRef& A) {
  const Mat e = 0.5 * (A + A.transpose());
  return std::abs((S * A).trace() - (S.array() * e.array()).sum());
}

double trace_identity_check(const VectorFieldNA& g, const Field2D& u, const std::vector<Vec2>& samples) {
  if (!g.grad_r) throw Error(ErrorKind::MissingEvaluator, "field '" + g.name + "' has no grad_r");
  double worst = 0.0;
  for (const Vec2& x : samples) {
    const Side s = u.side(x);
    const Mat S = g.grad_r(Vec(x), Vec(u.map(s)(x)));
    worst = std::max(worst, trace_discrepancy(S, u.gradient(s)));
  }
  return worst;
}

}  // namespace gsbdlab
