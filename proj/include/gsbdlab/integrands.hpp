#pragma once

#include "gsbdlab/piecewise.hpp"
#include "gsbdlab/types.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gsbdlab {

/// Hypotheses on a nonautonomous field g(x, r) that the validators can check by sampling.
enum class Condition { G1, G2, G3, G3Prime, G4, G5, G6, G1Prime };

std::string_view to_string(Condition c);
std::optional<Condition> condition_from_string(std::string_view name);

/// omega(s) = min(1, C s^alpha), alpha in (0, 1].
struct Modulus {
  double C = 1.0;
  double alpha = 1.0;

  double operator()(double s) const;
};

using FieldEval = std::function<Vec(const VecRef& x, const VecRef& r)>;
using JacobianEval = std::function<Mat(const VecRef& x, const VecRef& r)>;
using ScalarFieldEval = std::function<double(const VecRef& x, const VecRef& r)>;
using ScalarOfX = std::function<double(const VecRef& x)>;

/// A nonautonomous vector field g: R^d x R^d -> R^d with optional derivatives, potential and metadata.
/// Jacobians use the convention (i, j) = d g_i / d x_j (resp. d r_j).
struct VectorFieldNA {
  std::string name;
  int dim = 1;
  FieldEval value;
  JacobianEval grad_x;
  JacobianEval grad_r;
  ScalarFieldEval div_x;      // falls back to trace(grad_x)
  ScalarFieldEval potential;  // G with grad_r G = g

  std::optional<double> bound_M;      // (G4)
  std::optional<double> lipschitz_L;  // (G3')
  std::optional<Modulus> omega;       // (G2)
  std::optional<Modulus> omega_tilde; // (G5)
  ScalarOfX h1;                       // (G1), (G1')
  ScalarOfX h2;                       // (G2)
  std::set<Condition> declared;
  std::vector<Vec> exceptional_points;
  /// Global integrability bounds fail outside the working box (e.g. g = x r).
  bool restricted_validity = false;

  Vec operator()(const VecRef& x, const VecRef& r) const { return value(x, r); }
  double divergence_x(const VecRef& x, const VecRef& r) const;
  bool declares(Condition c) const { return declared.count(c) > 0; }
  /// Fills bound_M from lipschitz_L when (G3') is declared (|grad_r g|_F <= sqrt(d) L) and declares (G4).
  VectorFieldNA normalized() const;
};

/// Pointwise sum; evaluators present in both operands are summed, metadata is dropped.
VectorFieldNA operator+(const VectorFieldNA& a, const VectorFieldNA& b);
/// Multiplies a field by a scalar function of x (the derivative in x uses the gradient of `scale`).
VectorFieldNA scaled(const VectorFieldNA& g, ScalarOfX scale, std::function<Vec(const VecRef&)> scale_gradient);

struct SamplingBox {
  Vec x_lo, x_hi;
  Vec r_lo, r_hi;

  static SamplingBox cube(int dim, double x_lo, double x_hi, double r_lo, double r_hi);
};

struct ValidationTolerances {
  double grad = 1e-6;     // potential vs field by central differences
  double fd_step = 1e-5;
  double sym = 1e-10;     // asymmetry of grad_r g
  double lip = 1e-3;      // relative slack on sampled quotients
};

struct ConditionResult {
  Condition condition;
  bool passed = false;
  double witness = 0.0;   // worst sampled quantity (see detail)
  double bound = 0.0;     // the declared bound it was compared to
  double potential_gap = 0.0;  // (G6) only: max |grad_r G - g|
  std::string detail;
};

struct ConditionReport {
  std::string field;
  std::vector<ConditionResult> results;
  bool restricted_validity = false;

  bool all_passed() const;
  const ConditionResult* find(Condition c) const;
};

/// Checks every declared condition of g on a sampling grid of the box (n_x, n_r points per axis, >= 8).
ConditionReport validate_conditions(const VectorFieldNA& g, const SamplingBox& box, int n_x = 8, int n_r = 8,
                                    const ValidationTolerances& tol = {});

/// Non-negative amplitude a(x). Piecewise amplitudes take their lower value min(a-, a+) at breakpoints.
class Amplitude {
 public:
  static Amplitude constant(double value);
  static Amplitude piecewise(PiecewiseFn1D a);
  static Amplitude smooth(ScalarOfX a, std::string name = "smooth");

  double operator()(const VecRef& x) const;
  double operator()(double x) const { return (*this)(vec1(x)); }
  /// True when a has no jumps (hence W^{1,1} on bounded domains).
  bool is_sobolev() const { return sobolev_; }
  const std::optional<PiecewiseFn1D>& piecewise_function() const { return piecewise_; }
  const std::string& name() const { return name_; }
  /// Jump locations (d = 1 piecewise amplitudes only).
  std::vector<double> discontinuities() const;

 private:
  std::optional<PiecewiseFn1D> piecewise_;
  ScalarOfX smooth_;
  bool sobolev_ = true;
  std::string name_;
};

enum class IntegrandKind { ModelCase, Splitting, KappaXXi, SupFamily, Custom };
std::string_view to_string(IntegrandKind k);

using SurfaceEval = std::function<double(const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi)>;
using KappaEval = std::function<double(const VecRef& x, const VecRef& xi)>;

/// Even jump profile s -> gamma(s) on [0, inf) with its primitive Gamma(s) = int_0^s gamma.
struct JumpProfile {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> primitive;  // optional; quadrature is used when absent
  std::optional<double> lipschitz;

  double operator()(double s) const { return value(s); }
  double integral(double s) const;
};

/// Surface density phi(x, r, t, xi) together with the data it was generated from.
struct SurfaceIntegrand {
  std::string tag = "custom";
  IntegrandKind kind = IntegrandKind::Custom;
  int dim = 1;
  SurfaceEval eval;

  Amplitude amplitude = Amplitude::constant(1.0);
  std::optional<VectorFieldNA> model_field;  // ModelCase
  std::vector<VectorFieldNA> family;         // SupFamily, or the autonomous fields of Splitting
  KappaEval kappa;                           // KappaXXi
  std::optional<JumpProfile> profile;        // gamma(|r - t|) of trace-dependent kinds
  std::vector<double> x_discontinuities;     // declared jump points of phi(., r, t, xi)

  bool symmetric_jointly_convex = false;     // per x, autonomous notion
  bool na_sjc = false;
  bool bv_sjc = false;
  std::optional<double> strictly_positive_c;  // phi >= c > 0 for xi != 0
  bool c1_lower_semicontinuous = false;
  bool c2_positive = false;

  double operator()(const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) const {
    return eval(x, r, t, xi);
  }
  double operator()(double x, double r, double t, double xi) const { return eval(vec1(x), vec1(r), vec1(t), vec1(xi)); }
};

/// Result of the (LSC) condition check: for each epsilon, the largest sampled delta that works.
struct LscConditionReport {
  double x0 = 0.0;
  std::vector<double> epsilons;
  std::vector<double> deltas;  // 0 when no delta in the trial ladder works
  bool holds = false;
};

/// Samples phi(x0, r, t, xi) <= (1 + eps) phi(x, r, t, xi) for |x - x0| < delta on a grid (d = 1).
LscConditionReport check_lsc_condition(const SurfaceIntegrand& phi, double x0, double x_lo, double x_hi,
                                       const std::vector<double>& epsilons, int grid = 9);

}  // namespace gsbdlab
