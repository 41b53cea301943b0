#pragma once

#include "gsbdlab/quadrature.hpp"
#include "gsbdlab/types.hpp"

#include <functional>
#include <vector>

namespace gsbdlab {

/// Radial bump alpha(xi) = c (1 - |xi|^2)^2 on the unit ball with unit mass:
/// c = 15/16 in d = 1 and 3/pi in d = 2.
class MollifierAlpha {
 public:
  static MollifierAlpha canonical(int dim);

  int dim() const { return dim_; }
  double constant() const { return c_; }
  double operator()(const VecRef& xi) const;
  Vec gradient(const VecRef& xi) const;
  /// alpha_{j,q}(xi) = j^d alpha(j (q - xi))
  double scaled(int j, const VecRef& q, const VecRef& xi) const;
  Vec scaled_gradient(int j, const VecRef& q, const VecRef& xi) const;
  /// Quadrature value of int alpha.
  double mass(const QuadratureSpec& quad) const;

 private:
  MollifierAlpha(int dim, double c) : dim_(dim), c_(c) {}
  int dim_;
  double c_;
};

/// f(x, xi), convex in xi.
using ConvexIntegrand = std::function<double(const VecRef& x, const VecRef& xi)>;

struct AffineCoefficients {
  int j = 1;
  Vec q;
  double a0 = 0.0;
  Vec a;
};

/// Integrals over the ball B(q, 1/j); in d = 1 the ball is split at `kinks` so that
/// piecewise-polynomial f is integrated exactly.
AffineCoefficients affine_coeffs(const ConvexIntegrand& f, const MollifierAlpha& alpha, int j, const VecRef& q,
                                 const VecRef& x, const QuadratureSpec& quad,
                                 const std::vector<double>& kinks = {0.0});

struct DeGiorgiIndex {
  int j = 1;
  Vec q;
};

/// j in [j_min, j_max] times the lattice spacing * Z^d inside the cube of the given radius.
std::vector<DeGiorgiIndex> index_lattice(int dim, int j_max = 64, double spacing = 1.0 / 16, double radius = 2.0,
                                         int j_min = 1);

/// Coefficients at one x, evaluated once and reused for many xi.
class DeGiorgiEnvelope {
 public:
  DeGiorgiEnvelope(const ConvexIntegrand& f, const MollifierAlpha& alpha, const std::vector<DeGiorgiIndex>& indices,
                   const VecRef& x, const QuadratureSpec& quad, bool homogeneous,
                   const std::vector<double>& kinks = {0.0});

  /// max over indices of [a0 + <a, xi>]^+ (or <a, xi>^+ when homogeneous).
  double operator()(const VecRef& xi) const;
  const std::vector<AffineCoefficients>& coefficients() const { return coeffs_; }
  std::vector<Vec> slopes() const;

 private:
  std::vector<AffineCoefficients> coeffs_;
  bool homogeneous_;
};

double sup_reconstruct(const ConvexIntegrand& f, const MollifierAlpha& alpha,
                       const std::vector<DeGiorgiIndex>& indices, const VecRef& x, const VecRef& xi,
                       const QuadratureSpec& quad, bool homogeneous);

/// f(x, .) at a fixed x.
using SupportFunction = std::function<double(const VecRef& xi)>;

struct SupportCheck {
  bool member = false;
  double excess = 0.0;  // max over directions of <a, xi> - f(xi)
  Vec witness;          // direction attaining the excess
};

/// Membership a in K = {a : <a, xi> <= f(xi) for all xi} tested on a direction grid.
std::vector<SupportCheck> support_set_check(const SupportFunction& f, const std::vector<Vec>& coefficients,
                                            const std::vector<Vec>& directions, double tol = 1e-8);

using MembershipTest = std::function<bool(const Vec&)>;
MembershipTest support_membership(SupportFunction f, std::vector<Vec> directions, double tol = 1e-8);

/// {a_j + sigma v} that pass the membership test, deduplicated. Throws EmptySelection.
std::vector<Vec> selection_set(const std::vector<Vec>& anchors, const std::vector<double>& sigmas,
                               const std::vector<Vec>& directions, const MembershipTest& member);

/// Rational unit vectors: {-1, 1} in d = 1; in d = 2 the Pythagorean points
/// ((1 - t^2)/(1 + t^2), 2t/(1 + t^2)) for dyadic t in [-1, 1] of the given level and their negatives.
std::vector<Vec> rational_directions(int dim, int level = 4);

/// Dyadic sigmas 2^-k_min, ..., 2^-k_max.
std::vector<double> dyadic_sigmas(int k_min = 2, int k_max = 6);

}  // namespace gsbdlab
