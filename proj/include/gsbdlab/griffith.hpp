#pragma once

#include "gsbdlab/energy.hpp"
#include "gsbdlab/quadrature.hpp"

#include <cstdint>
#include <vector>

namespace gsbdlab {

/// Piecewise-affine scalar functions on a uniform mesh with node values on a uniform grid.
/// A jump at interior node i lets the right trace differ from the left one (cost phi(x_i, right, left, +1)).
struct DiscreteModel {
  EnergySpec energy;
  int N = 32;
  int V = 64;
  double u_min = 0.0;
  double u_max = 1.0;
  /// Permission per interior node 1..N-1 (index i - 1); empty means every node may jump.
  std::vector<bool> jump_allowed;
  QuadratureSpec quad;

  void validate() const;
  double h() const { return (energy.x_hi - energy.x_lo) / N; }
  double node(int i) const { return energy.x_lo + (energy.x_hi - energy.x_lo) * i / N; }
  double level(int k) const { return u_min + (u_max - u_min) * k / (V - 1); }
  bool may_jump(int i) const { return jump_allowed.empty() || jump_allowed[std::size_t(i - 1)]; }
};

struct MinimizerResult {
  std::vector<int> start_index;  // grid index of the value at the left end of each element
  std::vector<int> end_index;    // and at its right end
  std::vector<int> jump_nodes;   // interior nodes where the traces differ
  EnergyLedger ledger;           // cost sums as accumulated by the solver
  double griffith_bound = 0.0;   // c_min (int |u'|^p + #J) + int Psi(|u|)
  double compactness_quantity = 0.0;  // int Psi(|u|) + int |u'|^p + #J
  bool degenerate_surface = false;    // no positive lower bound on phi
  std::uint64_t visited = 0;          // search nodes (oracle only)

  std::vector<double> start_values(const DiscreteModel& m) const;
  std::vector<double> end_values(const DiscreteModel& m) const;
};

/// Exact minimizer over the discrete class in O(N V^2). Throws InfeasibleGrid.
MinimizerResult minimize_dp(const DiscreteModel& model);
/// Exhaustive branch-and-bound over the same class (N <= 6, V <= 8); throws SearchSpaceTooLarge.
MinimizerResult brute_force_oracle(const DiscreteModel& model);

/// The discrete minimizer as a piecewise-affine function with a breakpoint at every node.
PiecewiseFn1D reconstruct(const DiscreteModel& model, const MinimizerResult& r);

struct RefinementRow {
  int N = 0;
  int V = 0;
  EnergyLedger ledger;
  double bound_2_1 = 0.0;  // int Psi(|u|) + int |u'|^p + #J
};

struct RefinementReport {
  std::vector<RefinementRow> rows;
  double M = 0.0;  // total_0 / min(c_W, c_phi, 1) + 1
  bool non_increasing = true;
  bool bound_holds = true;
};

/// Doubles N and refines the value grid nestedly (V -> 2 (V - 1) + 1) so each level contains the previous class.
RefinementReport refinement_study(const DiscreteModel& model, int levels);

/// Pull test: W = |F|^2, phi = kappa0 |xi|, Psi = 0, u(x_lo) -> 0, u(x_hi) -> delta by a penalty of weight beta.
DiscreteModel griffith_pull_model(double delta, double kappa0, int N, int V, double u_min = -0.1, double u_max = 0.6,
                                  double beta = 1e4);

/// Seeded instance with piecewise-constant toughness a(x), random stiffness, confinement and boundary pulls.
DiscreteModel random_model(std::uint64_t seed, int N, int V);

}  // namespace gsbdlab
