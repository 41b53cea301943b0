#include "gsbdlab/energy.hpp"

#include <cmath>

namespace gsbdlab {

void EnergySpec::validate() const {
  if (!(p > 1.0)) throw Error(ErrorKind::InvalidParams, "bulk exponent p must exceed 1");
  if (!W) throw Error(ErrorKind::InvalidParams, "bulk potential W is missing");
  if (!phi.eval) throw Error(ErrorKind::InvalidParams, "surface integrand is missing");
  if (!psi) throw Error(ErrorKind::InvalidParams, "confinement Psi is missing");
  if (coercive && !(c_W > 0.0)) throw Error(ErrorKind::InvalidParams, "c_W must be positive when (w3) is declared");
  if (!(x_lo < x_hi)) throw Error(ErrorKind::InvalidParams, "domain must satisfy x_lo < x_hi");
  double prev = psi(0.0);
  if (!(prev >= 0.0)) throw Error(ErrorKind::InvalidParams, "Psi(0) must be non-negative");
  for (int i = 1; i <= 100; ++i) {
    const double v = psi(0.1 * i);
    if (v < prev) throw Error(ErrorKind::InvalidParams, "Psi must be non-decreasing");
    prev = v;
  }
  if (boundary && !(boundary->beta >= 0.0)) throw Error(ErrorKind::InvalidParams, "beta must be non-negative");
}

double confinement_integral(const Confinement& psi, const PiecewiseFn1D& u, const QuadratureSpec& quad) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.num_pieces(); ++i) {
    const auto [a, b] = u.piece_interval(i);
    total += integrate_interval([&](double x) { return psi(u.piece_value(i, x).norm()); }, a, b, quad);
  }
  return total;
}

double griffith_quantity(const PiecewiseFn1D& u, double p, const QuadratureSpec& quad) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.num_pieces(); ++i) {
    const auto [a, b] = u.piece_interval(i);
    total += integrate_interval([&](double x) { return std::pow(u.piece_derivative(i, x).norm(), p); }, a, b, quad);
  }
  return total + double(jump_set(u).size());
}

EnergyLedger eval_energy(const EnergySpec& spec, const PiecewiseFn1D& u, const QuadratureSpec& quad) {
  spec.validate();
  if (u.dim() != spec.dim || spec.phi.dim != u.dim())
    throw Error(ErrorKind::DimensionMismatch, "function, bulk and surface dimensions differ");
  if (u.x_lo() != spec.x_lo || u.x_hi() != spec.x_hi)
    throw Error(ErrorKind::DimensionMismatch, "function domain differs from the energy domain");
  if (spec.boundary && (spec.boundary->lo.size() != u.dim() || spec.boundary->hi.size() != u.dim()))
    throw Error(ErrorKind::DimensionMismatch, "boundary targets have the wrong dimension");

  EnergyLedger e;
  try {
    for (std::size_t i = 0; i < u.num_pieces(); ++i) {
      const auto [a, b] = u.piece_interval(i);
      e.bulk += integrate_interval([&](double x) { return spec.W(x, u.piece_derivative(i, x)); }, a, b, quad);
    }
    e.confinement = confinement_integral(spec.psi, u, quad);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NonFiniteIntegrand) throw Error(ErrorKind::NonFiniteEnergy, err.what());
    throw;
  }
  for (const JumpRecord& j : jump_set(u))
    e.surface += spec.phi(j.location, j.trace_plus, j.trace_minus, j.normal);
  if (spec.boundary) {
    const BoundaryPenalty& bc = *spec.boundary;
    e.boundary = bc.beta * ((u.value_at_lower_end() - bc.lo).squaredNorm() + (u.value_at_upper_end() - bc.hi).squaredNorm());
  }
  e.total = e.bulk + e.surface + e.confinement + e.boundary;
  if (!std::isfinite(e.total)) throw Error(ErrorKind::NonFiniteEnergy, "energy is not finite");
  return e;
}

namespace bulk {

BulkPotential quadratic(double scale) {
  return [scale](double, const VecRef& F) { return scale * F.squaredNorm(); };
}

BulkPotential power(double p, double scale) {
  return [p, scale](double, const VecRef& F) { return scale * std::pow(F.norm(), p); };
}

}  // namespace bulk

namespace confinement {

Confinement zero() {
  return [](double) { return 0.0; };
}

Confinement quadratic(double weight) {
  return [weight](double s) { return weight * s * s; };
}

}  // namespace confinement

}  // namespace gsbdlab
