#pragma once

#include "gsbdlab/integrands.hpp"
#include "gsbdlab/piecewise.hpp"
#include "gsbdlab/quadrature.hpp"

#include <functional>
#include <vector>

namespace gsbdlab {

/// Terms of -int <g(x,u), grad phi> = int phi div_x g(x,u) + int phi grad_r g(x,u) : e(u) + int_J phi <[g], nu>.
struct ChainRuleLedger {
  double lhs = 0.0;
  double term_divx = 0.0;
  double term_e = 0.0;
  double term_jump = 0.0;
  double residual = 0.0;
  QuadratureSpec quad;
};

/// Compactly supported test function with its gradient.
struct TestFunction {
  int dim = 1;
  std::function<double(const VecRef& x)> value;
  std::function<Vec(const VecRef& x)> gradient;
};

namespace test_functions {
/// (x - x_lo)(x_hi - x) on an interval.
TestFunction bubble(double x_lo, double x_hi, double scale = 1.0);
/// Product bubble on a rectangle.
TestFunction bubble(const Rectangle& rect, double scale = 1.0);
TestFunction zero(int dim);
}  // namespace test_functions

struct ChainRuleOptions {
  bool validate = true;  // run validate_conditions on the working box first
  int validate_grid = 8;
};

/// Throws ConditionViolation, BoundarySupport or ExceptionalCollision.
ChainRuleLedger chain_rule_ledger(const VectorFieldNA& g, const PiecewiseFn1D& u, const TestFunction& phi,
                                  const QuadratureSpec& quad, const ChainRuleOptions& opts = {});
ChainRuleLedger chain_rule_ledger(const VectorFieldNA& g, const Field2D& u, const TestFunction& phi,
                                  const QuadratureSpec& quad, const ChainRuleOptions& opts = {});

struct ConvergenceRow {
  int panels = 0;  // panels per unit length
  double residual = 0.0;
};

/// |residual| at base.n_panels * 2^k, k = 0..levels-1 (levels >= 3).
std::vector<ConvergenceRow> residual_convergence(const VectorFieldNA& g, const PiecewiseFn1D& u,
                                                 const TestFunction& phi, int levels, const QuadratureSpec& base,
                                                 const ChainRuleOptions& opts = {});

/// |tr(S A) - S : (A + A^T)/2|
double trace_discrepancy(const MatRef& S, const MatRef& A);

/// Max over the sample points of the discrepancy with S = grad_r g(x, u(x)) and A = grad u(x).
double trace_identity_check(const VectorFieldNA& g, const Field2D& u, const std::vector<Vec2>& samples);

}  // namespace gsbdlab
