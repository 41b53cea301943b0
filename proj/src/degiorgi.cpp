#include "gsbdlab/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsbdlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of h over the ball B(q, rho): split interval in d = 1, polar coordinates in d = 2.
template <typename H>
double integrate_ball(H&& h, const VecRef& q, double rho, const QuadratureSpec& quad,
                      const std::vector<double>& kinks) {
  if (q.size() == 1) {
    std::vector<double> cuts{q(0) - rho};
    for (double k : kinks)
      if (k > q(0) - rho && k < q(0) + rho) cuts.push_back(k);
    cuts.push_back(q(0) + rho);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    Vec xi(1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += integrate_interval(
          [&](double s) {
            xi(0) = s;
            return h(xi);
          },
          cuts[i], cuts[i + 1], quad);
    return total;
  }
  Vec xi(2);
  return integrate_interval(
      [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return integrate_interval(
            [&](double r) {
              xi(0) = q(0) + r * c;
              xi(1) = q(1) + r * s;
              return r * h(xi);
            },
            0.0, rho, quad);
      },
      0.0, 2 * kPi, quad);
}

}  // namespace

MollifierAlpha MollifierAlpha::canonical(int dim) {
  if (dim == 1) return MollifierAlpha(1, 15.0 / 16.0);
  if (dim == 2) return MollifierAlpha(2, 3.0 / kPi);
  throw Error(ErrorKind::InvalidParams, "mollifier dimension must be 1 or 2");
}

double MollifierAlpha::operator()(const VecRef& xi) const {
  const double s = xi.squaredNorm();
  if (s >= 1.0) return 0.0;
  return c_ * (1 - s) * (1 - s);
}

Vec MollifierAlpha::gradient(const VecRef& xi) const {
  const double s = xi.squaredNorm();
  if (s >= 1.0) return Vec::Zero(xi.size());
  return -4.0 * c_ * (1 - s) * xi;
}

double MollifierAlpha::scaled(int j, const VecRef& q, const VecRef& xi) const {
  return std::pow(double(j), dim_) * (*this)(double(j) * (q - xi));
}

Vec MollifierAlpha::scaled_gradient(int j, const VecRef& q, const VecRef& xi) const {
  return -std::pow(double(j), dim_ + 1) * gradient(double(j) * (q - xi));
}

double MollifierAlpha::mass(const QuadratureSpec& quad) const {
  return integrate_ball([&](const Vec& xi) { return (*this)(xi); }, Vec::Zero(dim_), 1.0, quad, {});
}

AffineCoefficients affine_coeffs(const ConvexIntegrand& f, const MollifierAlpha& alpha, int j, const VecRef& q,
                                 const VecRef& x, const QuadratureSpec& quad, const std::vector<double>& kinks) {
  if (j < 1) throw Error(ErrorKind::InvalidParams, "j must be at least 1");
  if (q.size() != alpha.dim()) throw Error(ErrorKind::DimensionMismatch, "anchor dimension differs from alpha");
  const int d = alpha.dim();
  const double rho = 1.0 / j;
  AffineCoefficients out;
  out.j = j;
  out.q = q;
  out.a = Vec::Zero(d);
  out.a0 = integrate_ball(
      [&](const Vec& xi) {
        return f(x, xi) * ((d + 1) * alpha.scaled(j, q, xi) + alpha.scaled_gradient(j, q, xi).dot(xi));
      },
      q, rho, quad, kinks);
  for (int k = 0; k < d; ++k)
    out.a(k) = -integrate_ball([&](const Vec& xi) { return f(x, xi) * alpha.scaled_gradient(j, q, xi)(k); }, q, rho,
                               quad, kinks);
  return out;
}

std::vector<DeGiorgiIndex> index_lattice(int dim, int j_max, double spacing, double radius, int j_min) {
  if (j_min < 1 || j_max < j_min) throw Error(ErrorKind::InvalidParams, "need 1 <= j_min <= j_max");
  if (!(spacing > 0) || !(radius >= 0)) throw Error(ErrorKind::InvalidParams, "lattice spacing must be positive");
  const int m = int(std::floor(radius / spacing + 1e-9));
  std::vector<double> axis;
  for (int i = -m; i <= m; ++i) axis.push_back(i * spacing);
  std::vector<DeGiorgiIndex> out;
  for (int j = j_min; j <= j_max; ++j) {
    if (dim == 1) {
      for (double a : axis) out.push_back({j, vec1(a)});
    } else {
      for (double a : axis)
        for (double b : axis) out.push_back({j, vec2(a, b)});
    }
  }
  return out;
}

DeGiorgiEnvelope::DeGiorgiEnvelope(const ConvexIntegrand& f, const MollifierAlpha& alpha,
                                   const std::vector<DeGiorgiIndex>& indices, const VecRef& x,
                                   const QuadratureSpec& quad, bool homogeneous, const std::vector<double>& kinks)
    : homogeneous_(homogeneous) {
  if (indices.empty()) throw Error(ErrorKind::InvalidParams, "index set must be non-empty");
  coeffs_.reserve(indices.size());
  for (const auto& idx : indices) coeffs_.push_back(affine_coeffs(f, alpha, idx.j, idx.q, x, quad, kinks));
}

double DeGiorgiEnvelope::operator()(const VecRef& xi) const {
  double best = 0.0;
  for (const auto& c : coeffs_) best = std::max(best, (homogeneous_ ? 0.0 : c.a0) + c.a.dot(xi));
  return best;
}

std::vector<Vec> DeGiorgiEnvelope::slopes() const {
  std::vector<Vec> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.a);
  return out;
}

double sup_reconstruct(const ConvexIntegrand& f, const MollifierAlpha& alpha,
                       const std::vector<DeGiorgiIndex>& indices, const VecRef& x, const VecRef& xi,
                       const QuadratureSpec& quad, bool homogeneous) {
  return DeGiorgiEnvelope(f, alpha, indices, x, quad, homogeneous)(xi);
}

std::vector<SupportCheck> support_set_check(const SupportFunction& f, const std::vector<Vec>& coefficients,
                                            const std::vector<Vec>& directions, double tol) {
  std::vector<double> fvals;
  fvals.reserve(directions.size());
  for (const Vec& e : directions) fvals.push_back(f(e));
  std::vector<SupportCheck> out;
  out.reserve(coefficients.size());
  for (const Vec& a : coefficients) {
    SupportCheck c;
    c.excess = -INFINITY;
    for (std::size_t i = 0; i < directions.size(); ++i) {
      const double ex = a.dot(directions[i]) - fvals[i];
      if (ex > c.excess) {
        c.excess = ex;
        c.witness = directions[i];
      }
    }
    c.member = c.excess <= tol;
    out.push_back(std::move(c));
  }
  return out;
}

MembershipTest support_membership(SupportFunction f, std::vector<Vec> directions, double tol) {
  std::vector<double> fvals;
  for (const Vec& e : directions) fvals.push_back(f(e));
  return [directions = std::move(directions), fvals = std::move(fvals), tol](const Vec& a) {
    for (std::size_t i = 0; i < directions.size(); ++i)
      if (a.dot(directions[i]) > fvals[i] + tol) return false;
    return true;
  };
}

std::vector<Vec> selection_set(const std::vector<Vec>& anchors, const std::vector<double>& sigmas,
                               const std::vector<Vec>& directions, const MembershipTest& member) {
  std::vector<Vec> out;
  auto seen = [&](const Vec& b) {
    return std::any_of(out.begin(), out.end(), [&](const Vec& o) { return (o - b).norm() <= 1e-14; });
  };
  for (const Vec& a : anchors)
    for (double s : sigmas)
      for (const Vec& v : directions) {
        Vec b = a + s * v;
        if (member(b) && !seen(b)) out.push_back(std::move(b));
      }
  if (out.empty()) throw Error(ErrorKind::EmptySelection, "no perturbed coefficient lies in the support set");
  return out;
}

std::vector<Vec> rational_directions(int dim, int level) {
  if (dim == 1) return {vec1(1.0), vec1(-1.0)};
  if (dim != 2) throw Error(ErrorKind::InvalidParams, "directions are available in d = 1, 2");
  std::vector<Vec> out;
  const int n = 1 << level;
  for (int i = -n; i < n; ++i) {
    const double t = double(i) / n;
    const Vec2 e((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t));
    out.push_back(e);
    out.push_back(-e);
  }
  return out;
}

std::vector<double> dyadic_sigmas(int k_min, int k_max) {
  std::vector<double> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

}  // namespace gsbdlab
