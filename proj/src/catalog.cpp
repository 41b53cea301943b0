#include "gsbdlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsbdlab {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); }

double log_cosh(double r) {
  const double a = std::abs(r);
  return a + std::log1p(std::exp(-2 * a)) - std::numbers::ln2;
}

double sech2(double r) {
  const double c = std::cosh(r);
  return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

Mat mat1(double v) { return Mat::Constant(1, 1, v); }

void check_amplitude(const Amplitude& a, double lo, double hi) {
  for (int i = 0; i <= 100; ++i) {
    const double x = lo + (hi - lo) * i / 100.0;
    const double v = a(x);
    if (!(v >= 0.0) || !std::isfinite(v)) invalid("amplitude must be finite and non-negative on the domain");
  }
}

double amplitude_min(const Amplitude& a, double lo, double hi) {
  double m = INFINITY;
  for (int i = 0; i <= 100; ++i) m = std::min(m, a(lo + (hi - lo) * i / 100.0));
  return m;
}

bool admissible_jump_profile(const ProfileShape& s) { return s.zero_at_origin && s.increasing && s.subadditive; }

// kappa(r, t, xi) = gamma(|r - t|) |xi|
SurfaceEval profile_eval(const Amplitude& a, const JumpProfile& gamma) {
  return [a, gamma](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
    return a(x) * gamma((r - t).norm()) * xi.norm();
  };
}

}  // namespace

std::string_view tag(CatalogKind kind) {
  switch (kind) {
    case CatalogKind::ModelCase: return "model_case";
    case CatalogKind::Splitting: return "splitting";
    case CatalogKind::KappaXXi: return "kappa_x_xi";
    case CatalogKind::ConvexNormalJump: return "convex_normal_jump";
    case CatalogKind::OrthoSup: return "ortho_sup";
    case CatalogKind::AmpTimesGamma: return "amp_times_gamma";
    case CatalogKind::AmpTimesKappaXi: return "amp_times_kappa_xi";
  }
  return "?";
}

CatalogKind catalog_kind_from_tag(std::string_view t) {
  for (auto k : {CatalogKind::ModelCase, CatalogKind::Splitting, CatalogKind::KappaXXi, CatalogKind::ConvexNormalJump,
                 CatalogKind::OrthoSup, CatalogKind::AmpTimesGamma, CatalogKind::AmpTimesKappaXi})
    if (tag(k) == t) return k;
  invalid("unknown catalog kind '" + std::string(t) + "'");
}

ProfileShape profile_shape(const JumpProfile& p, double s_max, int n) {
  std::vector<double> s(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s[std::size_t(i)] = s_max * i / double(n - 1);
    v[std::size_t(i)] = p(s[std::size_t(i)]);
  }
  ProfileShape out;
  constexpr double tol = 1e-12;
  out.zero_at_origin = std::abs(v[0]) <= tol;
  out.non_negative = std::all_of(v.begin(), v.end(), [](double y) { return y >= -tol; });
  out.increasing = out.subadditive = out.convex = true;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] < v[i] - tol) out.increasing = false;
    out.max_slope = std::max(out.max_slope, std::abs(v[i + 1] - v[i]) / (s[i + 1] - s[i]));
  }
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (v[i] > 0.5 * (v[i - 1] + v[i + 1]) + tol) out.convex = false;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; i + j < v.size(); ++j)
      if (v[i + j] > v[i] + v[j] + tol) out.subadditive = false;
  return out;
}

std::vector<Vec> sphere_grid(int dim, int count) {
  if (dim == 1) return {vec1(-1.0), vec1(1.0)};
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) {
    const double th = 2 * kPi * k / count;
    out.push_back(vec2(std::cos(th), std::sin(th)));
  }
  return out;
}

NormShape norm_shape(const NormEval& kappa, int dim) {
  NormShape out;
  out.even = out.homogeneous = out.convex = true;
  out.min_on_sphere = INFINITY;
  const auto dirs = sphere_grid(dim, 32);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * (1 + std::abs(a) + std::abs(b)); };
  if (std::abs(kappa(Vec::Zero(dim))) > 1e-12) out.homogeneous = false;
  for (const Vec& e : dirs) {
    const double k = kappa(e);
    out.min_on_sphere = std::min(out.min_on_sphere, k);
    if (!close(kappa(-e), k)) out.even = false;
    for (double lam : {0.5, 2.0, 3.0})
      if (!close(kappa(lam * e), lam * k)) out.homogeneous = false;
  }
  for (const Vec& a : dirs)
    for (const Vec& b : dirs)
      for (double s : {1.0, 2.0}) {
        const Vec bb = s * b;
        if (kappa(0.5 * (a + bb)) > 0.5 * (kappa(a) + kappa(bb)) + 1e-12) out.convex = false;
      }
  return out;
}

SurfaceIntegrand make_catalog_integrand(CatalogKind kind, const CatalogParams& p) {
  if (p.dim != 1 && p.dim != 2) invalid("dimension must be 1 or 2");
  if (!(p.x_lo < p.x_hi)) invalid("parameter box must satisfy x_lo < x_hi");
  SurfaceIntegrand phi;
  phi.tag = std::string(tag(kind));
  phi.dim = p.dim;
  phi.amplitude = p.amplitude;
  phi.c1_lower_semicontinuous = true;
  const Amplitude& a = p.amplitude;
  if (kind != CatalogKind::ModelCase && kind != CatalogKind::KappaXXi) {
    if (p.dim == 2 && a.piecewise_function()) invalid("piecewise amplitudes are one-dimensional");
    if (p.dim == 1) check_amplitude(a, p.x_lo, p.x_hi);
    phi.x_discontinuities = a.discontinuities();
  }

  switch (kind) {
    case CatalogKind::ModelCase: {
      if (!p.field) invalid("model_case needs a vector field");
      if (p.field->dim != p.dim) invalid("vector field dimension differs from the integrand dimension");
      const VectorFieldNA g = p.field->normalized();
      phi.kind = IntegrandKind::ModelCase;
      phi.model_field = g;
      phi.eval = [g](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
        return positive_part((g.value(x, r) - g.value(x, t)).dot(xi));
      };
      const bool g6 = g.declares(Condition::G6);
      phi.symmetric_jointly_convex = g6;
      phi.na_sjc = g6 && g.declares(Condition::G1) && g.declares(Condition::G2) && g.declares(Condition::G3Prime);
      phi.bv_sjc = g6 && g.declares(Condition::G1Prime) && g.declares(Condition::G3Prime);
      for (const Vec& e : g.exceptional_points)
        if (p.dim == 1) phi.x_discontinuities.push_back(e(0));
      break;
    }
    case CatalogKind::Splitting:
    case CatalogKind::AmpTimesGamma: {
      phi.kind = IntegrandKind::Splitting;
      bool sjc = false, lipschitz = false;
      if (p.profile) {
        const ProfileShape s = profile_shape(*p.profile);
        if (!s.non_negative) invalid("jump profile must be non-negative");
        sjc = admissible_jump_profile(s);
        lipschitz = p.profile->lipschitz.has_value();
        phi.profile = p.profile;
        phi.eval = profile_eval(a, *p.profile);
      } else if (kind == CatalogKind::Splitting && !p.family.empty()) {
        for (const auto& h : p.family)
          if (h.dim != p.dim) invalid("autonomous field dimension differs from the integrand dimension");
        sjc = std::all_of(p.family.begin(), p.family.end(), [](const VectorFieldNA& h) {
          return h.declares(Condition::G6) && bool(h.potential);
        });
        lipschitz = std::all_of(p.family.begin(), p.family.end(),
                                [](const VectorFieldNA& h) { return h.lipschitz_L.has_value(); });
        phi.family = p.family;
        const auto fam = p.family;
        const Vec origin = Vec::Zero(p.dim);
        phi.eval = [a, fam, origin](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
          double best = 0.0;
          for (const auto& h : fam) best = std::max(best, (h.value(origin, r) - h.value(origin, t)).dot(xi));
          return a(x) * best;
        };
      } else {
        invalid(std::string(tag(kind)) + " needs a jump profile" + (kind == CatalogKind::Splitting ? " or a family" : ""));
      }
      phi.symmetric_jointly_convex = sjc;
      phi.na_sjc = sjc && a.is_sobolev();
      phi.bv_sjc = sjc && lipschitz;
      break;
    }
    case CatalogKind::ConvexNormalJump: {
      if (!p.profile) invalid("convex_normal_jump needs kappa");
      const ProfileShape s = profile_shape(*p.profile);
      if (!s.non_negative) invalid("kappa must be non-negative");
      if (!s.convex) invalid("kappa must be convex");
      if (!s.subadditive) invalid("kappa must be subadditive");
      if (!s.increasing) invalid("kappa must be increasing");
      phi.kind = IntegrandKind::Splitting;
      phi.profile = p.profile;
      const JumpProfile k = *p.profile;
      phi.eval = [a, k](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
        return a(x) * k(std::abs((r - t).dot(xi)));
      };
      phi.symmetric_jointly_convex = true;
      phi.na_sjc = a.is_sobolev();
      phi.bv_sjc = p.profile->lipschitz.has_value();
      break;
    }
    case CatalogKind::OrthoSup: {
      if (int(p.thetas.size()) != p.dim) invalid("ortho_sup needs one theta per coordinate");
      bool lipschitz = true;
      for (const auto& th : p.thetas) {
        const ProfileShape s = profile_shape(th);
        if (!s.zero_at_origin) invalid("theta_k must vanish at 0");
        if (!s.non_negative) invalid("theta_k must be non-negative");
        if (!s.subadditive) invalid("theta_k must be subadditive");
        lipschitz = lipschitz && th.lipschitz.has_value();
      }
      phi.kind = IntegrandKind::Splitting;
      const auto thetas = p.thetas;
      if (p.dim == 1) {
        phi.profile = p.thetas.front();
        phi.eval = profile_eval(a, p.thetas.front());
      } else {
        // Orthonormal bases of R^2 up to signs: (z, z_perp) with z at angle in [0, pi).
        phi.eval = [a, thetas](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
          const Vec d = r - t;
          double best = 0.0;
          constexpr int steps = 720;
          for (int k = 0; k < steps; ++k) {
            const double th = kPi * k / steps;
            const Vec2 z1(std::cos(th), std::sin(th)), z2(-std::sin(th), std::cos(th));
            const double v1 = thetas[0](std::abs(d.dot(z1))) * std::abs(xi.dot(z1));
            const double v2 = thetas[1](std::abs(d.dot(z2))) * std::abs(xi.dot(z2));
            best = std::max(best, v1 * v1 + v2 * v2);
          }
          return a(x) * std::sqrt(best);
        };
      }
      phi.symmetric_jointly_convex = true;
      phi.na_sjc = a.is_sobolev();
      phi.bv_sjc = lipschitz;
      break;
    }
    case CatalogKind::AmpTimesKappaXi: {
      if (!p.norm) invalid("amp_times_kappa_xi needs kappa(xi)");
      const NormShape s = norm_shape(p.norm, p.dim);
      if (!s.even) invalid("kappa must be even");
      if (!s.homogeneous) invalid("kappa must be positively 1-homogeneous");
      if (!s.convex) invalid("kappa must be convex");
      phi.kind = IntegrandKind::KappaXXi;
      const NormEval k = p.norm;
      phi.kappa = [a, k](const VecRef& x, const VecRef& xi) { return a(x) * k(xi); };
      phi.eval = [a, k](const VecRef& x, const VecRef&, const VecRef&, const VecRef& xi) { return a(x) * k(xi); };
      phi.symmetric_jointly_convex = true;
      phi.na_sjc = a.is_sobolev();
      phi.bv_sjc = true;
      if (p.dim == 1) {
        const double c = amplitude_min(a, p.x_lo, p.x_hi) * s.min_on_sphere;
        if (c > 0) phi.strictly_positive_c = c;
      }
      phi.c2_positive = phi.strictly_positive_c.has_value();
      break;
    }
    case CatalogKind::KappaXXi: {
      if (!p.kappa) invalid("kappa_x_xi needs kappa(x, xi)");
      double c = INFINITY;
      for (int i = 0; i <= 10; ++i) {
        const double xs = p.x_lo + (p.x_hi - p.x_lo) * i / 10.0;
        const Vec x = Vec::Constant(p.dim, xs);
        const auto k = p.kappa;
        const NormShape s = norm_shape([k, x](const VecRef& xi) { return k(x, xi); }, p.dim);
        if (!s.even || !s.homogeneous || !s.convex) invalid("kappa(x, .) must be even, 1-homogeneous and convex");
        c = std::min(c, s.min_on_sphere);
      }
      if (!(c > 0)) invalid("kappa must be bounded below by a positive constant on the unit sphere");
      phi.kind = IntegrandKind::KappaXXi;
      phi.kappa = p.kappa;
      const KappaEval k = p.kappa;
      phi.eval = [k](const VecRef& x, const VecRef&, const VecRef&, const VecRef& xi) { return k(x, xi); };
      phi.x_discontinuities = p.kappa_discontinuities;
      phi.symmetric_jointly_convex = true;
      phi.na_sjc = p.kappa_discontinuities.empty();
      phi.bv_sjc = true;
      phi.strictly_positive_c = c;
      phi.c2_positive = true;
      break;
    }
  }
  return phi;
}

namespace profiles {

JumpProfile linear(double slope) {
  return {"linear", [slope](double s) { return slope * s; }, [slope](double s) { return 0.5 * slope * s * s; },
          std::abs(slope)};
}

JumpProfile capped(double cap) {
  return {"capped", [cap](double s) { return std::min(s, cap); },
          [cap](double s) { return s <= cap ? 0.5 * s * s : 0.5 * cap * cap + cap * (s - cap); }, 1.0};
}

JumpProfile superadditive() {
  return {"superadditive", [](double s) { return s <= 1 ? s : 1 + 2 * (s - 1); },
          [](double s) { return s <= 1 ? 0.5 * s * s : 0.5 + (s - 1) + (s - 1) * (s - 1); }, 2.0};
}

JumpProfile arctan(double h) {
  return {"arctan", [h](double s) { return 2 / kPi * std::atan(h * s); },
          [h](double s) { return 2 / kPi * (s * std::atan(h * s) - std::log1p(h * h * s * s) / (2 * h)); },
          2 * h / kPi};
}

JumpProfile sqrt_profile() {
  return {"sqrt", [](double s) { return std::sqrt(s); }, [](double s) { return 2.0 / 3.0 * s * std::sqrt(s); },
          std::nullopt};
}

JumpProfile affine(double c0, double slope) {
  return {"affine", [c0, slope](double s) { return c0 + slope * s; },
          [c0, slope](double s) { return c0 * s + 0.5 * slope * s * s; }, std::abs(slope)};
}

JumpProfile by_name(std::string_view name, double param) {
  if (name == "linear") return linear(param);
  if (name == "capped") return capped(param);
  if (name == "superadditive") return superadditive();
  if (name == "arctan") return arctan(param);
  if (name == "sqrt") return sqrt_profile();
  if (name == "affine") return affine(param, 1.0);
  invalid("unknown profile '" + std::string(name) + "'");
}

}  // namespace profiles

namespace norms {

NormEval euclidean() {
  return [](const VecRef& xi) { return xi.norm(); };
}

NormEval weighted_l1(double w1, double w2) {
  return [w1, w2](const VecRef& xi) { return w1 * std::abs(xi(0)) + (xi.size() > 1 ? w2 * std::abs(xi(1)) : 0.0); };
}

NormEval lopsided() {
  return [](const VecRef& xi) { return std::max(xi(0), 0.0) + 2 * std::max(-xi(0), 0.0); };
}

NormEval by_name(std::string_view name, const std::vector<double>& params) {
  if (name == "euclidean") return euclidean();
  if (name == "weighted_l1") {
    if (params.size() != 2) invalid("weighted_l1 needs two weights");
    return weighted_l1(params[0], params[1]);
  }
  if (name == "lopsided") return lopsided();
  invalid("unknown norm '" + std::string(name) + "'");
}

}  // namespace norms

namespace fields {

VectorFieldNA constant(const Vec& c) {
  VectorFieldNA g;
  const int d = int(c.size());
  g.name = "constant";
  g.dim = d;
  g.value = [c](const VecRef&, const VecRef&) -> Vec { return c; };
  g.grad_x = [d](const VecRef&, const VecRef&) -> Mat { return Mat::Zero(d, d); };
  g.grad_r = [d](const VecRef&, const VecRef&) -> Mat { return Mat::Zero(d, d); };
  g.potential = [c](const VecRef&, const VecRef& r) { return c.dot(r); };
  const double n = c.norm();
  g.h1 = [n](const VecRef&) { return n; };
  g.h2 = [](const VecRef&) { return 1.0; };
  g.omega = Modulus{1.0, 1.0};
  g.omega_tilde = Modulus{1.0, 1.0};
  g.lipschitz_L = 0.0;
  g.bound_M = 0.0;
  g.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime,
                Condition::G4, Condition::G5, Condition::G6};
  return g;
}

VectorFieldNA zero(int dim) {
  VectorFieldNA g = constant(Vec::Zero(dim));
  g.name = "zero";
  return g;
}

VectorFieldNA x_times_r() {
  VectorFieldNA g;
  g.name = "x_times_r";
  g.dim = 1;
  g.value = [](const VecRef& x, const VecRef& r) -> Vec { return vec1(x(0) * r(0)); };
  g.grad_x = [](const VecRef&, const VecRef& r) -> Mat { return mat1(r(0)); };
  g.grad_r = [](const VecRef& x, const VecRef&) -> Mat { return mat1(x(0)); };
  g.div_x = [](const VecRef&, const VecRef& r) { return r(0); };
  g.potential = [](const VecRef& x, const VecRef& r) { return 0.5 * x(0) * r(0) * r(0); };
  // Bounds hold on x in [0, 1], r in [-2, 2].
  g.h1 = [](const VecRef& x) { return 2 * std::abs(x(0)); };
  g.h2 = [](const VecRef&) { return 4.0; };
  g.omega = Modulus{1.0, 1.0};
  g.omega_tilde = Modulus{1.0, 1.0};
  g.lipschitz_L = 1.0;
  g.bound_M = 1.0;
  g.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime,
                Condition::G4, Condition::G5, Condition::G6};
  g.restricted_validity = true;
  return g;
}

VectorFieldNA identity(int dim) {
  VectorFieldNA g;
  g.name = "identity";
  g.dim = dim;
  g.value = [](const VecRef&, const VecRef& r) -> Vec { return r; };
  g.grad_x = [dim](const VecRef&, const VecRef&) -> Mat { return Mat::Zero(dim, dim); };
  g.grad_r = [dim](const VecRef&, const VecRef&) -> Mat { return Mat::Identity(dim, dim); };
  g.div_x = [](const VecRef&, const VecRef&) { return 0.0; };
  g.potential = [](const VecRef&, const VecRef& r) { return 0.5 * r.squaredNorm(); };
  const double h1 = 2 * std::sqrt(double(dim));
  g.h1 = [h1](const VecRef&) { return h1; };
  g.h2 = [](const VecRef&) { return 1.0; };
  g.omega = Modulus{1.0, 1.0};
  g.omega_tilde = Modulus{1.0, 1.0};
  g.lipschitz_L = 1.0;
  g.bound_M = std::sqrt(double(dim));
  g.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime,
                Condition::G4, Condition::G5, Condition::G6};
  g.restricted_validity = true;
  return g;
}

VectorFieldNA sin_tanh() {
  VectorFieldNA g;
  g.name = "sin_tanh";
  g.dim = 1;
  g.value = [](const VecRef& x, const VecRef& r) -> Vec { return vec1(std::sin(x(0)) * std::tanh(r(0))); };
  g.grad_x = [](const VecRef& x, const VecRef& r) -> Mat { return mat1(std::cos(x(0)) * std::tanh(r(0))); };
  g.grad_r = [](const VecRef& x, const VecRef& r) -> Mat { return mat1(std::sin(x(0)) * sech2(r(0))); };
  g.potential = [](const VecRef& x, const VecRef& r) { return std::sin(x(0)) * log_cosh(r(0)); };
  g.h1 = [](const VecRef&) { return 1.0; };
  g.h2 = [](const VecRef&) { return 2.0; };
  g.omega = Modulus{1.0, 1.0};
  g.omega_tilde = Modulus{1.0, 1.0};
  g.lipschitz_L = 1.0;
  g.bound_M = 1.0;
  g.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime,
                Condition::G4, Condition::G5, Condition::G6};
  return g;
}

VectorFieldNA tanh_field() {
  VectorFieldNA g;
  g.name = "tanh";
  g.dim = 1;
  g.value = [](const VecRef&, const VecRef& r) -> Vec { return vec1(std::tanh(r(0))); };
  g.grad_x = [](const VecRef&, const VecRef&) -> Mat { return mat1(0.0); };
  g.grad_r = [](const VecRef&, const VecRef& r) -> Mat { return mat1(sech2(r(0))); };
  g.potential = [](const VecRef&, const VecRef& r) { return log_cosh(r(0)); };
  g.h1 = [](const VecRef&) { return 1.0; };
  g.h2 = [](const VecRef&) { return 1.0; };
  g.omega = Modulus{1.0, 1.0};
  g.omega_tilde = Modulus{1.0, 1.0};
  g.lipschitz_L = 1.0;
  g.bound_M = 1.0;
  g.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime,
                Condition::G4, Condition::G5, Condition::G6};
  return g;
}

VectorFieldNA clamped_tanh() {
  VectorFieldNA g;
  g.name = "clamped_tanh";
  g.dim = 1;
  auto m = [](double x) { return std::min(x * x + 1, 2.0); };
  auto dm = [](double x) { return std::abs(x) < 1 ? 2 * x : 0.0; };
  g.value = [m](const VecRef& x, const VecRef& r) -> Vec { return vec1(m(x(0)) * std::tanh(r(0))); };
  g.grad_x = [dm](const VecRef& x, const VecRef& r) -> Mat { return mat1(dm(x(0)) * std::tanh(r(0))); };
  g.grad_r = [m](const VecRef& x, const VecRef& r) -> Mat { return mat1(m(x(0)) * sech2(r(0))); };
  g.potential = [m](const VecRef& x, const VecRef& r) { return m(x(0)) * log_cosh(r(0)); };
  g.h1 = [](const VecRef&) { return 2.0; };
  g.h2 = [](const VecRef&) { return 4.0; };
  g.omega = Modulus{1.0, 1.0};
  g.lipschitz_L = 2.0;
  g.bound_M = 2.0;
  g.exceptional_points = {vec1(-1.0), vec1(1.0)};
  g.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime, Condition::G4, Condition::G6};
  return g;
}

VectorFieldNA skew_shear() {
  VectorFieldNA g;
  g.name = "skew_shear";
  g.dim = 2;
  g.value = [](const VecRef&, const VecRef& r) -> Vec { return vec2(r(1), 0.0); };
  g.grad_x = [](const VecRef&, const VecRef&) -> Mat { return Mat::Zero(2, 2); };
  g.grad_r = [](const VecRef&, const VecRef&) -> Mat {
    Mat J = Mat::Zero(2, 2);
    J(0, 1) = 1.0;
    return J;
  };
  g.potential = [](const VecRef&, const VecRef& r) { return r(0) * r(1); };
  g.declared = {Condition::G6};
  return g;
}

VectorFieldNA by_name(std::string_view name, int dim) {
  auto need = [&](int d) {
    if (dim != d) invalid("field '" + std::string(name) + "' has dimension " + std::to_string(d));
  };
  if (name == "zero") return zero(dim);
  if (name == "identity") return identity(dim);
  if (name == "x_times_r") return need(1), x_times_r();
  if (name == "sin_tanh") return need(1), sin_tanh();
  if (name == "tanh") return need(1), tanh_field();
  if (name == "clamped_tanh") return need(1), clamped_tanh();
  if (name == "skew_shear") return need(2), skew_shear();
  invalid("unknown field '" + std::string(name) + "'");
}

}  // namespace fields

}  // namespace gsbdlab
