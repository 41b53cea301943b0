#pragma once

#include "gsbdlab/integrands.hpp"
#include "gsbdlab/piecewise.hpp"
#include "gsbdlab/quadrature.hpp"

#include <functional>
#include <optional>

namespace gsbdlab {

using BulkPotential = std::function<double(double x, const VecRef& F)>;
using Confinement = std::function<double(double s)>;

/// Quadratic pull of the end values toward targets with weight beta.
struct BoundaryPenalty {
  Vec lo;
  Vec hi;
  double beta = 1e4;
};

/// E(u) = int W(x, e(u)) + sum_{J_u} phi(x, u+, u-, nu) + int Psi(|u|) (+ boundary penalty) on [x_lo, x_hi].
struct EnergySpec {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int dim = 1;
  BulkPotential W;
  double p = 2.0;
  double c_W = 1.0;           // W(x, F) >= c_W |F|^p
  bool coercive = true;       // (w3) declared
  SurfaceIntegrand phi;
  Confinement psi;
  std::optional<BoundaryPenalty> boundary;

  void validate() const;
};

struct EnergyLedger {
  double bulk = 0.0;
  double surface = 0.0;
  double confinement = 0.0;
  double boundary = 0.0;
  double total = 0.0;
};

EnergyLedger eval_energy(const EnergySpec& spec, const PiecewiseFn1D& u, const QuadratureSpec& quad);

/// int |e(u)|^p dx + H^0(J_u)
double griffith_quantity(const PiecewiseFn1D& u, double p, const QuadratureSpec& quad);
/// int Psi(|u|) dx
double confinement_integral(const Confinement& psi, const PiecewiseFn1D& u, const QuadratureSpec& quad);

namespace bulk {
/// scale |F|^2
BulkPotential quadratic(double scale = 1.0);
/// scale |F|^p
BulkPotential power(double p, double scale = 1.0);
}  // namespace bulk

namespace confinement {
Confinement zero();
/// weight s^2
Confinement quadratic(double weight = 1.0);
}  // namespace confinement

}  // namespace gsbdlab
