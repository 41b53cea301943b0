#pragma once

#include "gsbdlab/integrands.hpp"
#include "gsbdlab/jointconvex.hpp"
#include "gsbdlab/piecewise.hpp"
#include "gsbdlab/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gsbdlab {

enum class RecipeKind { JumpTranslation, AmplitudeVanishing, JumpSplitting, PiecewisePerturbation };
std::string_view to_string(RecipeKind k);
RecipeKind recipe_kind_from_string(std::string_view s);

/// Sequence u_n built from a base function; u_n -> base in measure.
struct SequenceRecipe {
  RecipeKind kind = RecipeKind::JumpTranslation;
  PiecewiseFn1D base = PiecewiseFn1D::step(0.0, 1.0, 0.5, 0.0, 1.0);
  std::size_t jump_index = 0;  // which jump of base is moved, scaled or split
  double scale = 1.0;          // translation by scale/n, split half-width scale/(2n)
  int n_min = 1;
  int n_max = 64;
  /// Declared C for sup_n int |u_n'|^p + #J(u_n); the sampled supremum is used when absent.
  std::optional<double> bound_C;
  double p = 2.0;

  /// Every recipe in the library keeps the Griffith quantity bounded.
  bool declares_bound() const { return true; }
};

/// The n-th member; throws RecipeOutOfDomain when the moved jump leaves the domain or crosses a breakpoint.
PiecewiseFn1D generate_sequence(const SequenceRecipe& recipe, int n);

/// Sum over the jump set of phi(x, u+, u-, nu).
double surface_energy(const SurfaceIntegrand& phi, const PiecewiseFn1D& u);

enum class LscVerdict { Holds, Violated, BoundFails };
std::string_view to_string(LscVerdict v);

struct LscOptions {
  double tau = 1e-8;
  QuadratureSpec quad;
};

struct LscReport {
  std::vector<int> n;
  std::vector<double> values;  // F(u_n)
  double limit_value = 0.0;    // F(u)
  double liminf_estimate = 0.0;
  double gap = 0.0;            // F(u) - liminf_estimate
  double bound_C = 0.0;
  double bound_sup = 0.0;      // sup_n of the Griffith quantity
  double kyfan_final = 0.0;    // Ky Fan distance at n_max
  double kyfan_half = 0.0;     // and at n_max / 2
  LscVerdict verdict = LscVerdict::Holds;
};

/// Throws NotConvergent unless the Ky Fan distance to u_limit halves-ish (<= 0.75x) from n_max/2 to n_max
/// or is already below 2^-10.
LscReport check_liminf(const SurfaceIntegrand& phi, const SequenceRecipe& recipe, const PiecewiseFn1D& u_limit,
                       const LscOptions& opts = {});

struct SplittingRow {
  double h = 0.0;
  std::size_t recipe = 0;
  double limit_value = 0.0;  // F_{phi_h}(u)
  LscVerdict verdict = LscVerdict::Holds;
};

struct SplittingSuiteReport {
  std::vector<SplittingRow> rows;
  std::vector<LscReport> full;  // one per recipe, phi = a kappa
  bool monotone = true;         // F_{phi_h}(u) non-decreasing in h and <= F_phi(u)
  bool all_hold = true;
  double limit_gap = 0.0;       // max over recipes of F_phi(u) - F_{phi_hmax}(u)
};

/// phi_h = a_h kappa with a_h the inf-convolution of a; kappa is evaluated at x and multiplied by a_h(x).
SplittingSuiteReport splitting_lsc_suite(const PiecewiseFn1D& a, const SurfaceIntegrand& kappa,
                                         const std::vector<SequenceRecipe>& recipes,
                                         const std::vector<double>& h_grid, const LscOptions& opts = {});

}  // namespace gsbdlab
