#pragma once

#include "gsbdlab/integrands.hpp"

#include <string_view>

namespace gsbdlab {

/// Catalog constructions of nonautonomous surface integrands.
enum class CatalogKind {
  ModelCase,        // <g(x,r) - g(x,t), xi>^+
  Splitting,        // a(x) kappa(r, t, xi), kappa autonomous symmetric jointly convex
  KappaXXi,         // kappa(x, xi) for r != t
  ConvexNormalJump, // a(x) kappa(|<r - t, xi>|)
  OrthoSup,         // a(x) sup over orthonormal bases of (sum theta_k(<r-t,z_k>)^2 |<xi,z_k>|^2)^(1/2)
  AmpTimesGamma,    // a(x) gamma(|r - t|) |xi|
  AmpTimesKappaXi,  // a(x) kappa(xi)
};

std::string_view tag(CatalogKind kind);
CatalogKind catalog_kind_from_tag(std::string_view tag);

using NormEval = std::function<double(const VecRef& xi)>;

struct CatalogParams {
  int dim = 1;
  std::optional<VectorFieldNA> field;  // ModelCase
  Amplitude amplitude = Amplitude::constant(1.0);
  std::optional<JumpProfile> profile;  // gamma, or kappa of ConvexNormalJump, or the Splitting profile
  std::vector<VectorFieldNA> family;   // Splitting given by autonomous conservative fields
  std::vector<JumpProfile> thetas;     // OrthoSup, one per coordinate
  NormEval norm;                       // AmpTimesKappaXi
  KappaEval kappa;                     // KappaXXi
  /// Jump points of x -> kappa(x, xi) (KappaXXi); empty means W^{1,1} in x.
  std::vector<double> kappa_discontinuities;
  /// Box on which the parameter checks sample x (per coordinate).
  double x_lo = 0.0, x_hi = 1.0;
};

/// Builds the integrand and sets its classification flags. Throws InvalidParams on malformed parameters.
SurfaceIntegrand make_catalog_integrand(CatalogKind kind, const CatalogParams& params);

/// Sampled shape checks on [0, s_max] used by the catalog.
struct ProfileShape {
  bool zero_at_origin = false;
  bool non_negative = false;
  bool increasing = false;
  bool subadditive = false;
  bool convex = false;
  double max_slope = 0.0;  // sampled Lipschitz constant
};
ProfileShape profile_shape(const JumpProfile& p, double s_max = 4.0, int n = 41);

/// Sampled (K3)-style checks of xi -> kappa(xi) on a direction grid.
struct NormShape {
  bool even = false;
  bool homogeneous = false;
  bool convex = false;
  double min_on_sphere = 0.0;
};
NormShape norm_shape(const NormEval& kappa, int dim);

/// Unit vectors: {-1, +1} in d = 1, `count` equispaced angles on the circle in d = 2.
std::vector<Vec> sphere_grid(int dim, int count = 64);

namespace profiles {
JumpProfile linear(double slope = 1.0);
/// min(s, cap)
JumpProfile capped(double cap = 1.0);
/// s on [0, 1], 1 + 2 (s - 1) beyond: theta(1) = 1, theta(2) = 3.
JumpProfile superadditive();
/// (2/pi) atan(h s)
JumpProfile arctan(double h = 1.0);
JumpProfile sqrt_profile();
/// c0 + slope * s
JumpProfile affine(double c0, double slope);
JumpProfile by_name(std::string_view name, double param);
}  // namespace profiles

namespace norms {
NormEval euclidean();
/// w1 |xi_1| + w2 |xi_2|
NormEval weighted_l1(double w1, double w2);
/// Not even: max(xi, 0) + 2 max(-xi, 0) along the first coordinate.
NormEval lopsided();
NormEval by_name(std::string_view name, const std::vector<double>& params);
}  // namespace norms

namespace fields {
VectorFieldNA zero(int dim);
/// g(x, r) = x r (d = 1), all conditions on x in [0, 1], r in [-2, 2] only.
VectorFieldNA x_times_r();
/// g(x, r) = r, potential |r|^2 / 2.
VectorFieldNA identity(int dim);
/// g(x, r) = sin(x) tanh(r).
VectorFieldNA sin_tanh();
/// g(x, r) = tanh(r).
VectorFieldNA tanh_field();
/// g(x, r) = min(x^2 + 1, 2) tanh(r), kinks at x = +-1.
VectorFieldNA clamped_tanh();
/// g(x, r) = (r_2, 0) with candidate potential r_1 r_2; grad_r g is not symmetric.
VectorFieldNA skew_shear();
/// g(x, r) = c (constant vector).
VectorFieldNA constant(const Vec& c);
VectorFieldNA by_name(std::string_view name, int dim);
}  // namespace fields

}  // namespace gsbdlab
