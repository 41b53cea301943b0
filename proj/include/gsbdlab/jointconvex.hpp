#pragma once

#include "gsbdlab/catalog.hpp"
#include "gsbdlab/degiorgi.hpp"
#include "gsbdlab/integrands.hpp"
#include "gsbdlab/quadrature.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gsbdlab {

/// theta_h(y) = (2/pi) atan(h |y|) and its odd primitive.
struct ThetaFamily {
  double h = 1.0;

  double operator()(double y) const;
  double primitive(double y) const;
  /// Derivative off y = 0 (sign(y) (2/pi) h / (1 + h^2 y^2)); 0 at y = 0 by convention.
  double derivative(double y) const;
};

using Selection = std::function<Vec(const VecRef& x)>;

/// g(x, w) = theta_h(<w - p, b(x)>) b(x), potential Theta_h(<w - p, b(x)>).
VectorFieldNA arctan_field(double h, Selection b, const Vec& p, std::optional<double> lipschitz = std::nullopt,
                           std::string name = "arctan");

struct DeGiorgiSettings {
  int j_max = 64;
  double spacing = 1.0 / 16;
  double radius = 2.0;
  std::vector<double> sigmas = dyadic_sigmas(2, 6);
  int direction_level = 3;
  std::vector<double> kinks{0.0};
};

/// Selections b_l(x) drawn from De Giorgi coefficients of kappa(x, .) and their perturbations a_j + sigma v.
/// Index l = (j, q, k): k = 0 gives a_{j,q}(x); k > 0 gives a_{j,q}(x) + sigma v when it lies in K(x), otherwise
/// the largest smaller sigma that does, otherwise a_{j,q}(x).
class DeGiorgiSelections {
 public:
  DeGiorgiSelections(KappaEval kappa, int dim, DeGiorgiSettings settings, QuadratureSpec quad);

  std::size_t size() const { return indices_.size() * stride_; }
  Vec evaluate(std::size_t l, const VecRef& x) const;
  /// Every b_l(x), deduplicated.
  std::vector<Vec> evaluate_all(const VecRef& x) const;
  Selection selection(std::size_t l) const;
  int dim() const { return dim_; }

 private:
  std::vector<Vec> slopes(const VecRef& x, std::size_t only = SIZE_MAX) const;
  Vec perturb(const Vec& a, std::size_t k, const MembershipTest& member) const;
  MembershipTest membership(const VecRef& x) const;

  KappaEval kappa_;
  int dim_;
  DeGiorgiSettings settings_;
  QuadratureSpec quad_;
  MollifierAlpha alpha_;
  std::vector<DeGiorgiIndex> indices_;
  std::vector<Vec> directions_;
  std::size_t stride_;
};

/// The (h, l, p) family for a kappa of type kappa(x, xi).
class ArctanFamily {
 public:
  ArctanFamily(std::vector<double> h_grid, std::shared_ptr<const DeGiorgiSelections> selections,
               std::vector<Vec> anchors, std::vector<Vec> lipschitz_probe);

  std::size_t size() const { return h_grid_.size() * selections_->size() * anchors_.size(); }
  const std::vector<double>& h_grid() const { return h_grid_; }
  const std::vector<Vec>& anchors() const { return anchors_; }
  const DeGiorgiSelections& selections() const { return *selections_; }
  /// Field for (h index, selection index, anchor index); L = (2/pi) h sup_x |b_l(x)|^2 over the probe points.
  VectorFieldNA member(std::size_t ih, std::size_t l, std::size_t ip) const;
  /// sup over the family of <g(x, r) - g(x, t), xi>, using the distinct selections at x.
  double sup_pairing(const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) const;
  /// Same, reusing precomputed selections at x.
  double sup_pairing(const std::vector<Vec>& b, const VecRef& r, const VecRef& t, const VecRef& xi) const;

 private:
  std::vector<double> h_grid_;
  std::shared_ptr<const DeGiorgiSelections> selections_;
  std::vector<Vec> anchors_;
  std::vector<Vec> probe_;
};

/// Checks (K3) and the positive lower bound of kappa on a sample grid of [x_lo, x_hi]; throws InvalidKappa.
ArctanFamily build_arctan_family(const SurfaceIntegrand& kappa, std::vector<double> h_grid,
                                 std::shared_ptr<const DeGiorgiSelections> selections, std::vector<Vec> anchors,
                                 double x_lo = 0.0, double x_hi = 1.0);

/// Dyadic points within 2^-k of each t (floor and ceil roundings per coordinate), k = 0..k_max, deduplicated.
std::vector<Vec> dyadic_anchors(const std::vector<Vec>& traces, int k_max = 10);

struct RepresentationSample {
  Vec x, r, t, xi;
};

struct RepresentationReport {
  double max_over_shoot = 0.0;
  double max_under_shoot = 0.0;
  std::size_t worst_over = 0;
  std::size_t worst_under = 0;
  double eps_target = 1e-2;
  bool pass = false;
};

using FamilySup = std::function<double(const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi)>;

/// Over- and under-shoot of a family supremum against phi on samples with r != t; throws DegenerateSample.
RepresentationReport verify_representation(const SurfaceEval& phi, const FamilySup& family,
                                           const std::vector<RepresentationSample>& samples,
                                           double eps_target = 1e-2, double over_tol = 1e-8);
RepresentationReport verify_representation(const SurfaceIntegrand& kappa, const ArctanFamily& family,
                                           const std::vector<RepresentationSample>& samples,
                                           double eps_target = 1e-2);

/// Seeded samples x in [x_lo, x_hi]^d, r, t on the 2^-lattice_level grid of [r_lo, r_hi]^d with |r - t| >= min_jump,
/// xi a unit vector.
std::vector<RepresentationSample> representation_samples(int dim, std::size_t count, std::uint64_t seed,
                                                         double x_lo, double x_hi, double r_lo, double r_hi,
                                                         double min_jump = 0.25, int lattice_level = 10);

struct MollifiedField {
  VectorFieldNA field;
  double sampled_gap = 0.0;  // max |g - g_eps| on the sampling box
  double gap_bound = 0.0;    // L eps
};

/// g_eps(x, r) = int g(x, r - eps z) alpha(z) dz with potential G_eps; throws MissingPotential.
MollifiedField mollify_field(const VectorFieldNA& g, double eps, const MollifierAlpha& rho, const QuadratureSpec& quad,
                             const SamplingBox& box, int n = 16);

/// a_h(x) = inf_y a(y) + h |x - y| for a non-negative piecewise polynomial a taking its lower value at jumps.
class InfConvolution {
 public:
  /// point_values lists declared values a(x0) at breakpoints; each must equal min(a-, a+) (NotLowerValue).
  InfConvolution(PiecewiseFn1D a, double h, std::vector<std::pair<double, double>> point_values = {});

  double operator()(double x) const;
  double h() const { return h_; }
  const PiecewiseFn1D& base() const { return a_; }

 private:
  PiecewiseFn1D a_;
  double h_;
};

InfConvolution inf_convolution_approx(const PiecewiseFn1D& a, double h,
                                      std::vector<std::pair<double, double>> point_values = {});

enum class SjcMode { Autonomous, NA, BV };
std::string_view to_string(SjcMode m);
SjcMode sjc_mode_from_string(std::string_view s);

struct CertifyOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  double eps_target = 1e-2;
  std::vector<double> h_grid{1, 4, 16, 64, 256, 1000};
  double x_lo = 0.0, x_hi = 1.0;
  double r_lo = -2.0, r_hi = 2.0;
  double min_jump = 0.25;
  int anchor_levels = 10;
  DeGiorgiSettings degiorgi;
  QuadratureSpec quad;
  int validate_grid = 8;
  int representative_members = 3;
};

struct CertificationReport {
  SjcMode mode = SjcMode::NA;
  std::string tag;
  std::size_t family_size = 0;
  double over_shoot = 0.0;
  double under_shoot = 0.0;
  std::vector<ConditionReport> condition_tables;
  double triangle_gap = 0.0;           // max phi(r,t) - phi(r,s) - phi(s,t)
  double triangle_relative_gap = 0.0;  // the same divided by phi(r,t)
  std::vector<double> triangle_witness;  // x, r, s, t, xi (d = 1)
  double swap_gap = 0.0;
  std::optional<double> b3_declared;
  double b3_sampled = 0.0;
  double lower_value_gap = 0.0;
  double amplitude_gap = 0.0;  // max a - a_h at the largest h (BV splitting)
  bool certified = false;
  std::string failing_clause;

  std::string verdict() const { return certified ? "PASS" : "NotCertifiable"; }
};

CertificationReport certify_sjc(const SurfaceIntegrand& phi, SjcMode mode, const CertifyOptions& opts = {});
/// certify_sjc, throwing NotCertifiable with the failing clause.
CertificationReport require_sjc(const SurfaceIntegrand& phi, SjcMode mode, const CertifyOptions& opts = {});

}  // namespace gsbdlab
