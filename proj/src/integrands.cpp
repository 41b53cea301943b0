#include "gsbdlab/integrands.hpp"

#include "gsbdlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace gsbdlab {

namespace {

constexpr std::array<std::pair<Condition, std::string_view>, 8> kConditionNames{{
    {Condition::G1, "G1"},
    {Condition::G2, "G2"},
    {Condition::G3, "G3"},
    {Condition::G3Prime, "G3'"},
    {Condition::G4, "G4"},
    {Condition::G5, "G5"},
    {Condition::G6, "G6"},
    {Condition::G1Prime, "G1'"},
}};

// Tensor grid with n points per axis, endpoints included.
std::vector<Vec> tensor_grid(const Vec& lo, const Vec& hi, int n) {
  const int d = int(lo.size());
  std::vector<Vec> out;
  std::vector<int> idx(std::size_t(d), 0);
  while (true) {
    Vec p(d);
    for (int k = 0; k < d; ++k) p(k) = lo(k) + (hi(k) - lo(k)) * idx[std::size_t(k)] / double(n - 1);
    out.push_back(p);
    int k = 0;
    while (k < d && ++idx[std::size_t(k)] == n) idx[std::size_t(k++)] = 0;
    if (k == d) break;
  }
  return out;
}

Mat fd_jacobian_r(const VectorFieldNA& g, const VecRef& x, const VecRef& r, double h) {
  Mat J(g.dim, g.dim);
  for (int j = 0; j < g.dim; ++j) {
    Vec rp = r, rm = r;
    rp(j) += h;
    rm(j) -= h;
    J.col(j) = (g.value(x, rp) - g.value(x, rm)) / (2 * h);
  }
  return J;
}

Vec fd_gradient_potential(const VectorFieldNA& g, const VecRef& x, const VecRef& r, double h) {
  Vec out(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    Vec rp = r, rm = r;
    rp(j) += h;
    rm(j) -= h;
    out(j) = (g.potential(x, rp) - g.potential(x, rm)) / (2 * h);
  }
  return out;
}

[[noreturn]] void missing(const VectorFieldNA& g, Condition c, std::string_view what) {
  std::ostringstream os;
  os << "field '" << g.name << "' declares " << to_string(c) << " but provides no " << what;
  throw Error(ErrorKind::MissingEvaluator, os.str());
}

}  // namespace

std::string_view to_string(Condition c) {
  for (const auto& [cond, name] : kConditionNames)
    if (cond == c) return name;
  return "?";
}

std::optional<Condition> condition_from_string(std::string_view name) {
  for (const auto& [cond, n] : kConditionNames)
    if (n == name) return cond;
  return std::nullopt;
}

double Modulus::operator()(double s) const { return std::min(1.0, C * std::pow(std::abs(s), alpha)); }

double VectorFieldNA::divergence_x(const VecRef& x, const VecRef& r) const {
  if (div_x) return div_x(x, r);
  if (grad_x) return grad_x(x, r).trace();
  throw Error(ErrorKind::MissingEvaluator, "field '" + name + "' has neither div_x nor grad_x");
}

VectorFieldNA VectorFieldNA::normalized() const {
  VectorFieldNA out = *this;
  if (declares(Condition::G3Prime) && lipschitz_L && !bound_M) {
    out.bound_M = std::sqrt(double(dim)) * *lipschitz_L;
    out.declared.insert(Condition::G4);
  }
  return out;
}

VectorFieldNA operator+(const VectorFieldNA& a, const VectorFieldNA& b) {
  if (a.dim != b.dim) throw Error(ErrorKind::DimensionMismatch, "cannot add fields of different dimension");
  VectorFieldNA out;
  out.name = a.name + "+" + b.name;
  out.dim = a.dim;
  out.value = [a, b](const VecRef& x, const VecRef& r) -> Vec { return a.value(x, r) + b.value(x, r); };
  if (a.grad_x && b.grad_x)
    out.grad_x = [a, b](const VecRef& x, const VecRef& r) -> Mat { return a.grad_x(x, r) + b.grad_x(x, r); };
  if (a.grad_r && b.grad_r)
    out.grad_r = [a, b](const VecRef& x, const VecRef& r) -> Mat { return a.grad_r(x, r) + b.grad_r(x, r); };
  if ((a.div_x || a.grad_x) && (b.div_x || b.grad_x))
    out.div_x = [a, b](const VecRef& x, const VecRef& r) { return a.divergence_x(x, r) + b.divergence_x(x, r); };
  if (a.potential && b.potential)
    out.potential = [a, b](const VecRef& x, const VecRef& r) { return a.potential(x, r) + b.potential(x, r); };
  out.exceptional_points = a.exceptional_points;
  out.exceptional_points.insert(out.exceptional_points.end(), b.exceptional_points.begin(),
                                b.exceptional_points.end());
  return out;
}

VectorFieldNA scaled(const VectorFieldNA& g, ScalarOfX scale, std::function<Vec(const VecRef&)> scale_gradient) {
  VectorFieldNA out = g;
  out.name = "scaled(" + g.name + ")";
  out.value = [g, scale](const VecRef& x, const VecRef& r) -> Vec { return scale(x) * g.value(x, r); };
  if (g.grad_r)
    out.grad_r = [g, scale](const VecRef& x, const VecRef& r) -> Mat { return scale(x) * g.grad_r(x, r); };
  if (g.grad_x && scale_gradient) {
    out.grad_x = [g, scale, scale_gradient](const VecRef& x, const VecRef& r) -> Mat {
      return scale(x) * g.grad_x(x, r) + g.value(x, r) * scale_gradient(x).transpose();
    };
  } else {
    out.grad_x = nullptr;
  }
  out.div_x = nullptr;
  if (g.potential)
    out.potential = [g, scale](const VecRef& x, const VecRef& r) { return scale(x) * g.potential(x, r); };
  out.bound_M.reset();
  out.lipschitz_L.reset();
  out.omega.reset();
  out.omega_tilde.reset();
  out.h1 = nullptr;
  out.h2 = nullptr;
  out.declared.clear();
  return out;
}

SamplingBox SamplingBox::cube(int dim, double x_lo, double x_hi, double r_lo, double r_hi) {
  return SamplingBox{Vec::Constant(dim, x_lo), Vec::Constant(dim, x_hi), Vec::Constant(dim, r_lo),
                     Vec::Constant(dim, r_hi)};
}

bool ConditionReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const ConditionResult& r) { return r.passed; });
}

const ConditionResult* ConditionReport::find(Condition c) const {
  for (const auto& r : results)
    if (r.condition == c) return &r;
  return nullptr;
}

ConditionReport validate_conditions(const VectorFieldNA& field, const SamplingBox& box, int n_x, int n_r,
                                    const ValidationTolerances& tol) {
  if (n_x < 8 || n_r < 8) throw Error(ErrorKind::InvalidParams, "grid sizes must be at least 8 per axis");
  const VectorFieldNA g = field.normalized();
  const int d = g.dim;
  if (box.x_lo.size() != d || box.x_hi.size() != d || box.r_lo.size() != d || box.r_hi.size() != d)
    throw Error(ErrorKind::DimensionMismatch, "sampling box dimension differs from the field dimension");

  std::vector<Vec> xs;
  for (const Vec& x : tensor_grid(box.x_lo, box.x_hi, n_x)) {
    const bool near = std::any_of(g.exceptional_points.begin(), g.exceptional_points.end(),
                                  [&](const Vec& p) { return (p - x).norm() <= 1e-9; });
    if (!near) xs.push_back(x);
  }
  const std::vector<Vec> rs = tensor_grid(box.r_lo, box.r_hi, n_r);

  ConditionReport report;
  report.field = g.name;
  report.restricted_validity = g.restricted_validity;

  for (const auto& [cond, cname] : kConditionNames) {
    if (!g.declares(cond)) continue;
    ConditionResult res;
    res.condition = cond;
    switch (cond) {
      case Condition::G1:
      case Condition::G1Prime: {
        if (!g.h1) missing(g, cond, "h1");
        double worst = -INFINITY;
        for (const Vec& x : xs) {
          const double bound = g.h1(x);
          for (const Vec& r : rs) worst = std::max(worst, g.value(x, r).norm() - bound);
        }
        res.witness = worst;
        res.passed = worst <= 1e-12;
        res.detail = "max |g| - h1";
        if (cond == Condition::G1Prime && d == 1) {
          // The field must take its lower one-sided value at every declared jump point.
          constexpr double eta = 1e-9;
          double lower_gap = 0.0;
          for (const Vec& p : g.exceptional_points) {
            if (p(0) - eta < box.x_lo(0) || p(0) + eta > box.x_hi(0)) continue;
            for (const Vec& r : rs) {
              const double left = g.value(vec1(p(0) - eta), r)(0);
              const double right = g.value(vec1(p(0) + eta), r)(0);
              lower_gap = std::max(lower_gap, std::abs(g.value(p, r)(0) - std::min(left, right)));
            }
          }
          res.bound = lower_gap;
          if (lower_gap > 1e-6) {
            res.passed = false;
            res.detail = "value differs from the lower one-sided limit";
          }
        }
        break;
      }
      case Condition::G2: {
        if (!g.grad_x) missing(g, cond, "grad_x");
        if (!g.h2) missing(g, cond, "h2");
        if (!g.omega) missing(g, cond, "modulus omega");
        double worst = 0.0;
        for (const Vec& x : xs) {
          const double h2 = g.h2(x);
          std::vector<Mat> jac;
          for (const Vec& r : rs) jac.push_back(g.grad_x(x, r));
          for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = i + 1; j < rs.size(); ++j) {
              const double lhs = (jac[i] - jac[j]).norm();
              const double rhs = (*g.omega)((rs[i] - rs[j]).norm()) * h2;
              worst = std::max(worst, lhs - rhs * (1 + tol.lip));
            }
        }
        res.witness = worst;
        res.passed = worst <= 1e-12;
        res.detail = "max |grad_x g(x,r) - grad_x g(x,s)| - omega h2";
        break;
      }
      case Condition::G3: {
        if (!g.grad_r) missing(g, cond, "grad_r");
        double worst = 0.0;
        for (const Vec& x : xs)
          for (const Vec& r : rs) {
            const Mat J = g.grad_r(x, r);
            const double err = (J - fd_jacobian_r(g, x, r, tol.fd_step)).norm();
            worst = std::max(worst, err / std::max(1.0, J.norm()));
          }
        res.witness = worst;
        res.bound = tol.grad;
        res.passed = worst <= tol.grad;
        res.detail = "relative error of grad_r g against central differences";
        break;
      }
      case Condition::G3Prime: {
        if (!g.lipschitz_L) missing(g, cond, "Lipschitz constant");
        double worst = 0.0;
        for (const Vec& x : xs) {
          std::vector<Vec> vals;
          for (const Vec& r : rs) vals.push_back(g.value(x, r));
          for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = i + 1; j < rs.size(); ++j)
              worst = std::max(worst, (vals[i] - vals[j]).norm() / (rs[i] - rs[j]).norm());
        }
        res.witness = worst;
        res.bound = *g.lipschitz_L;
        res.passed = worst <= *g.lipschitz_L * (1 + tol.lip);
        res.detail = "max sampled Lipschitz quotient in r";
        break;
      }
      case Condition::G4: {
        if (!g.bound_M) missing(g, cond, "bound M");
        double worst = 0.0;
        for (const Vec& x : xs)
          for (const Vec& r : rs) {
            const Mat J = g.grad_r ? g.grad_r(x, r) : fd_jacobian_r(g, x, r, tol.fd_step);
            worst = std::max(worst, J.norm());
          }
        res.witness = worst;
        res.bound = *g.bound_M;
        res.passed = worst <= *g.bound_M * (1 + tol.lip) + 1e-12;
        res.detail = "max Frobenius norm of grad_r g";
        break;
      }
      case Condition::G5: {
        if (!g.grad_r) missing(g, cond, "grad_r");
        if (!g.omega_tilde) missing(g, cond, "modulus omega_tilde");
        double worst = 0.0;
        for (const Vec& x : xs) {
          std::vector<Mat> jac;
          for (const Vec& r : rs) jac.push_back(g.grad_r(x, r));
          for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = i + 1; j < rs.size(); ++j) {
              const double lhs = (jac[i] - jac[j]).norm();
              const double rhs = (*g.omega_tilde)((rs[i] - rs[j]).norm());
              worst = std::max(worst, lhs - rhs * (1 + tol.lip));
            }
        }
        res.witness = worst;
        res.passed = worst <= 1e-12;
        res.detail = "max |grad_r g(x,r) - grad_r g(x,s)| - omega_tilde";
        break;
      }
      case Condition::G6: {
        if (!g.potential) missing(g, cond, "potential");
        double gap = 0.0, asym = 0.0;
        for (const Vec& x : xs)
          for (const Vec& r : rs) {
            gap = std::max(gap, (fd_gradient_potential(g, x, r, tol.fd_step) - g.value(x, r)).cwiseAbs().maxCoeff());
            const Mat J = g.grad_r ? g.grad_r(x, r) : fd_jacobian_r(g, x, r, tol.fd_step);
            asym = std::max(asym, (J - J.transpose()).cwiseAbs().maxCoeff());
          }
        res.witness = asym;
        res.potential_gap = gap;
        res.bound = tol.sym;
        const double sym_tol = g.grad_r ? tol.sym : tol.grad;
        // Central differences of G straddling a kink of g are off by up to L h / 2.
        const std::optional<double> L = g.lipschitz_L ? g.lipschitz_L : g.bound_M;
        const double grad_tol = tol.grad + (L ? 0.5 * *L * tol.fd_step : 0.0);
        res.passed = gap <= grad_tol && asym <= sym_tol;
        res.detail = asym > sym_tol ? "grad_r g is not symmetric"
                     : gap > grad_tol ? "grad_r G does not match g"
                                      : "potential matches and grad_r g is symmetric";
        break;
      }
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

Amplitude Amplitude::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw Error(ErrorKind::InvalidParams, "amplitude must be >= 0");
  Amplitude a;
  a.smooth_ = [value](const VecRef&) { return value; };
  a.name_ = "constant";
  return a;
}

Amplitude Amplitude::piecewise(PiecewiseFn1D f) {
  if (f.dim() != 1) throw Error(ErrorKind::InvalidParams, "amplitude must be scalar-valued");
  Amplitude a;
  a.sobolev_ = jump_set(f).empty();
  a.piecewise_ = std::move(f);
  a.name_ = "piecewise";
  return a;
}

Amplitude Amplitude::smooth(ScalarOfX f, std::string name) {
  Amplitude a;
  a.smooth_ = std::move(f);
  a.name_ = std::move(name);
  return a;
}

double Amplitude::operator()(const VecRef& x) const {
  if (!piecewise_) return smooth_(x);
  const PiecewiseFn1D& f = *piecewise_;
  const double t = x(0);
  const auto& bps = f.breakpoints();
  const auto it = std::lower_bound(bps.begin(), bps.end(), t);
  if (it != bps.end() && *it == t) {
    const std::size_t b = std::size_t(it - bps.begin());
    return std::min(f.trace_minus(b)(0), f.trace_plus(b)(0));
  }
  return f.eval(t)(0);
}

std::vector<double> Amplitude::discontinuities() const {
  std::vector<double> out;
  if (piecewise_)
    for (const auto& j : jump_set(*piecewise_)) out.push_back(j.location(0));
  return out;
}

double JumpProfile::integral(double s) const {
  if (primitive) return primitive(s);
  if (s <= 0.0) return 0.0;
  return integrate_interval(value, 0.0, s, QuadratureSpec{8, 64, 1});
}

std::string_view to_string(IntegrandKind k) {
  switch (k) {
    case IntegrandKind::ModelCase: return "ModelCase";
    case IntegrandKind::Splitting: return "Splitting";
    case IntegrandKind::KappaXXi: return "KappaXXi";
    case IntegrandKind::SupFamily: return "SupFamily";
    case IntegrandKind::Custom: return "Custom";
  }
  return "?";
}

LscConditionReport check_lsc_condition(const SurfaceIntegrand& phi, double x0, double x_lo, double x_hi,
                                       const std::vector<double>& epsilons, int grid) {
  if (phi.dim != 1) throw Error(ErrorKind::DimensionMismatch, "the (LSC) check samples d = 1 integrands");
  LscConditionReport rep;
  rep.x0 = x0;
  rep.epsilons = epsilons;
  std::vector<double> values;
  for (int i = 0; i < grid; ++i) values.push_back(-2.0 + 4.0 * i / double(grid - 1));
  const std::array<double, 2> normals{-1.0, 1.0};

  auto works = [&](double eps, double delta) {
    for (int k = 1; k <= grid; ++k) {
      for (double side : {-1.0, 1.0}) {
        const double x = x0 + side * delta * k / double(grid + 1);
        if (x < x_lo || x > x_hi) continue;
        for (double r : values)
          for (double t : values)
            for (double xi : normals)
              if (phi(x0, r, t, xi) > (1 + eps) * phi(x, r, t, xi) + 1e-14) return false;
      }
    }
    return true;
  };

  rep.holds = true;
  for (double eps : epsilons) {
    double found = 0.0;
    for (int k = 1; k <= 30; ++k) {
      const double delta = std::ldexp(1.0, -k);
      if (works(eps, delta)) {
        found = delta;
        break;
      }
    }
    rep.deltas.push_back(found);
    if (found == 0.0) rep.holds = false;
  }
  return rep;
}

}  // namespace gsbdlab
