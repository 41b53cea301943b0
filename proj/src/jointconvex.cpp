#include "gsbdlab/jointconvex.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace gsbdlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of h(z) alpha(z) over the unit ball.
template <typename H>
auto integrate_unit_ball(H&& h, const MollifierAlpha& alpha, const QuadratureSpec& quad) {
  Vec z(alpha.dim());
  if (alpha.dim() == 1) {
    auto f = [&](double s) {
      z(0) = s;
      return h(z) * alpha(z);
    };
    return integrate_interval(f, -1.0, 1.0, quad);
  }
  return integrate_interval(
      [&](double th) {
        const double c = std::cos(th), s = std::sin(th);
        return integrate_interval(
            [&](double rad) {
              z(0) = rad * c;
              z(1) = rad * s;
              return rad * h(z) * alpha(z);
            },
            0.0, 1.0, quad);
      },
      0.0, 2 * kPi, quad);
}

// Componentwise version for vector and matrix integrands.
template <typename M, typename H>
M integrate_unit_ball_matrix(H&& h, const MollifierAlpha& alpha, const QuadratureSpec& quad, Eigen::Index rows,
                             Eigen::Index cols) {
  M out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      out(i, j) = integrate_unit_ball([&](const Vec& z) { return h(z)(i, j); }, alpha, quad);
  return out;
}

bool same_point(const Vec& a, const Vec& b, double tol = 1e-14) {
  return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

void push_unique(std::vector<Vec>& out, Vec v, double tol = 1e-14) {
  for (const Vec& o : out)
    if (same_point(o, v, tol)) return;
  out.push_back(std::move(v));
}

double amplitude_sup(const Amplitude& a, double x_lo, double x_hi) {
  double best = 0.0;
  for (int i = 0; i <= 1000; ++i) best = std::max(best, a(x_lo + (x_hi - x_lo) * i / 1000.0));
  if (const auto& pw = a.piecewise_function()) {
    for (std::size_t b = 0; b < pw->breakpoints().size(); ++b)
      best = std::max({best, pw->trace_minus(b)(0), pw->trace_plus(b)(0)});
  }
  return best;
}

}  // namespace

double ThetaFamily::operator()(double y) const { return 2.0 / kPi * std::atan(h * std::abs(y)); }

double ThetaFamily::primitive(double y) const {
  const double a = std::abs(y);
  const double v = 2.0 / kPi * (a * std::atan(h * a) - std::log1p(h * h * a * a) / (2 * h));
  return y < 0 ? -v : v;
}

double ThetaFamily::derivative(double y) const {
  if (y == 0.0) return 0.0;
  const double v = 2.0 / kPi * h / (1 + h * h * y * y);
  return y < 0 ? -v : v;
}

VectorFieldNA arctan_field(double h, Selection b, const Vec& p, std::optional<double> lipschitz, std::string name) {
  if (!(h > 0)) throw Error(ErrorKind::InvalidParams, "arctan parameter h must be positive");
  if (!b) throw Error(ErrorKind::MissingEvaluator, "arctan field needs a selection");
  const ThetaFamily th{h};
  VectorFieldNA g;
  g.name = std::move(name);
  g.dim = int(p.size());
  g.value = [th, b, p](const VecRef& x, const VecRef& w) -> Vec {
    const Vec bx = b(x);
    return th((w - p).dot(bx)) * bx;
  };
  g.grad_r = [th, b, p](const VecRef& x, const VecRef& w) -> Mat {
    const Vec bx = b(x);
    return th.derivative((w - p).dot(bx)) * bx * bx.transpose();
  };
  g.potential = [th, b, p](const VecRef& x, const VecRef& w) { return th.primitive((w - p).dot(b(x))); };
  g.h1 = [b](const VecRef& x) { return b(x).norm(); };
  g.declared = {Condition::G1, Condition::G6};
  if (lipschitz) {
    g.lipschitz_L = *lipschitz;
    g.declared.insert(Condition::G3Prime);
  }
  return g.normalized();
}

DeGiorgiSelections::DeGiorgiSelections(KappaEval kappa, int dim, DeGiorgiSettings settings, QuadratureSpec quad)
    : kappa_(std::move(kappa)),
      dim_(dim),
      settings_(std::move(settings)),
      quad_(quad),
      alpha_(MollifierAlpha::canonical(dim)) {
  if (!kappa_) throw Error(ErrorKind::InvalidKappa, "selections need kappa(x, xi)");
  indices_ = index_lattice(dim, settings_.j_max, settings_.spacing, settings_.radius);
  directions_ = rational_directions(dim, settings_.direction_level);
  std::sort(settings_.sigmas.begin(), settings_.sigmas.end(), std::greater<>());
  stride_ = 1 + settings_.sigmas.size() * directions_.size();
}

std::vector<Vec> DeGiorgiSelections::slopes(const VecRef& x, std::size_t only) const {
  const ConvexIntegrand f = [this](const VecRef& xx, const VecRef& xi) { return kappa_(xx, xi); };
  std::vector<Vec> out;
  if (only != SIZE_MAX) {
    const auto& idx = indices_[only];
    out.push_back(affine_coeffs(f, alpha_, idx.j, idx.q, x, quad_, settings_.kinks).a);
    return out;
  }
  out.reserve(indices_.size());
  for (const auto& idx : indices_) out.push_back(affine_coeffs(f, alpha_, idx.j, idx.q, x, quad_, settings_.kinks).a);
  return out;
}

MembershipTest DeGiorgiSelections::membership(const VecRef& x) const {
  const Vec xx = x;
  const KappaEval k = kappa_;
  std::vector<Vec> dirs = rational_directions(dim_, std::max(settings_.direction_level, 4));
  return support_membership([k, xx](const VecRef& xi) { return k(xx, xi); }, std::move(dirs), 1e-12);
}

Vec DeGiorgiSelections::perturb(const Vec& a, std::size_t k, const MembershipTest& member) const {
  if (k == 0) return a;
  const std::size_t nd = directions_.size();
  const std::size_t is = (k - 1) / nd, iv = (k - 1) % nd;
  for (std::size_t s = is; s < settings_.sigmas.size(); ++s) {
    Vec b = a + settings_.sigmas[s] * directions_[iv];
    if (member(b)) return b;
  }
  return a;
}

Vec DeGiorgiSelections::evaluate(std::size_t l, const VecRef& x) const {
  if (l >= size()) throw Error(ErrorKind::InvalidParams, "selection index out of range");
  const std::size_t i = l / stride_, k = l % stride_;
  const Vec a = slopes(x, i).front();
  if (k == 0) return a;
  return perturb(a, k, membership(x));
}

std::vector<Vec> DeGiorgiSelections::evaluate_all(const VecRef& x) const {
  const std::vector<Vec> base = slopes(x);
  const MembershipTest member = membership(x);
  // Distinct slopes first; perturbations only depend on the slope value.
  std::vector<Vec> anchors;
  for (const Vec& a : base) push_unique(anchors, a);
  std::vector<Vec> out;
  for (const Vec& a : anchors)
    for (std::size_t k = 0; k < stride_; ++k) push_unique(out, perturb(a, k, member));
  return out;
}

Selection DeGiorgiSelections::selection(std::size_t l) const {
  if (l >= size()) throw Error(ErrorKind::InvalidParams, "selection index out of range");
  return [this, l](const VecRef& x) { return evaluate(l, x); };
}

ArctanFamily::ArctanFamily(std::vector<double> h_grid, std::shared_ptr<const DeGiorgiSelections> selections,
                           std::vector<Vec> anchors, std::vector<Vec> lipschitz_probe)
    : h_grid_(std::move(h_grid)),
      selections_(std::move(selections)),
      anchors_(std::move(anchors)),
      probe_(std::move(lipschitz_probe)) {
  if (h_grid_.empty() || anchors_.empty() || !selections_ || selections_->size() == 0)
    throw Error(ErrorKind::InvalidParams, "arctan family needs non-empty h, selection and anchor grids");
  for (double h : h_grid_)
    if (!(h > 0)) throw Error(ErrorKind::InvalidParams, "h grid must be positive");
}

VectorFieldNA ArctanFamily::member(std::size_t ih, std::size_t l, std::size_t ip) const {
  if (ih >= h_grid_.size() || ip >= anchors_.size()) throw Error(ErrorKind::InvalidParams, "member index out of range");
  const double h = h_grid_[ih];
  double sup_b2 = 0.0;
  for (const Vec& x : probe_) sup_b2 = std::max(sup_b2, selections_->evaluate(l, x).squaredNorm());
  const auto sel = selections_;
  Selection b = [sel, l](const VecRef& x) { return sel->evaluate(l, x); };
  return arctan_field(h, std::move(b), anchors_[ip], 2.0 / kPi * h * sup_b2,
                      "arctan[h=" + std::to_string(ih) + ",l=" + std::to_string(l) + ",p=" + std::to_string(ip) + "]");
}

double ArctanFamily::sup_pairing(const std::vector<Vec>& b, const VecRef& r, const VecRef& t, const VecRef& xi) const {
  double best = -INFINITY;
  for (const Vec& bl : b) {
    const double bx = bl.dot(xi);
    for (double h : h_grid_) {
      const ThetaFamily th{h};
      for (const Vec& p : anchors_) best = std::max(best, (th((r - p).dot(bl)) - th((t - p).dot(bl))) * bx);
    }
  }
  return best;
}

double ArctanFamily::sup_pairing(const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) const {
  return sup_pairing(selections_->evaluate_all(x), r, t, xi);
}

ArctanFamily build_arctan_family(const SurfaceIntegrand& kappa, std::vector<double> h_grid,
                                 std::shared_ptr<const DeGiorgiSelections> selections, std::vector<Vec> anchors,
                                 double x_lo, double x_hi) {
  if (kappa.kind != IntegrandKind::KappaXXi || !kappa.kappa)
    throw Error(ErrorKind::InvalidKappa, "the arctan family needs an integrand of type kappa(x, xi)");
  std::vector<Vec> probe;
  for (int i = 0; i <= 10; ++i) {
    const Vec x = Vec::Constant(kappa.dim, x_lo + (x_hi - x_lo) * i / 10.0);
    const auto k = kappa.kappa;
    const NormShape s = norm_shape([k, x](const VecRef& xi) { return k(x, xi); }, kappa.dim);
    if (!s.even) throw Error(ErrorKind::InvalidKappa, "kappa(x, .) is not even");
    if (!s.homogeneous) throw Error(ErrorKind::InvalidKappa, "kappa(x, .) is not 1-homogeneous");
    if (!s.convex) throw Error(ErrorKind::InvalidKappa, "kappa(x, .) is not convex");
    if (!(s.min_on_sphere > 0)) throw Error(ErrorKind::InvalidKappa, "kappa(x, .) is not bounded below on the sphere");
    probe.push_back(x);
  }
  return ArctanFamily(std::move(h_grid), std::move(selections), std::move(anchors), std::move(probe));
}

std::vector<Vec> dyadic_anchors(const std::vector<Vec>& traces, int k_max) {
  std::vector<Vec> out;
  std::map<std::vector<double>, bool> seen;
  for (const Vec& t : traces) {
    const Eigen::Index d = t.size();
    for (int k = 0; k <= k_max; ++k) {
      const double scale = std::ldexp(1.0, k);
      // All floor/ceil combinations per coordinate.
      for (int mask = 0; mask < (1 << d); ++mask) {
        Vec p(d);
        for (Eigen::Index c = 0; c < d; ++c)
          p(c) = ((mask >> c) & 1 ? std::ceil(t(c) * scale) : std::floor(t(c) * scale)) / scale;
        std::vector<double> key(p.data(), p.data() + d);
        if (!seen.emplace(key, true).second) continue;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

RepresentationReport verify_representation(const SurfaceEval& phi, const FamilySup& family,
                                           const std::vector<RepresentationSample>& samples, double eps_target,
                                           double over_tol) {
  if (samples.empty()) throw Error(ErrorKind::InvalidParams, "no representation samples");
  RepresentationReport rep;
  rep.eps_target = eps_target;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if ((s.r - s.t).norm() == 0.0) throw Error(ErrorKind::DegenerateSample, "sample " + std::to_string(i) + " has r = t");
    const double target = phi(s.x, s.r, s.t, s.xi);
    const double sup = family(s.x, s.r, s.t, s.xi);
    const double over = positive_part(sup - target), under = positive_part(target - sup);
    if (over > rep.max_over_shoot) {
      rep.max_over_shoot = over;
      rep.worst_over = i;
    }
    if (under > rep.max_under_shoot) {
      rep.max_under_shoot = under;
      rep.worst_under = i;
    }
  }
  rep.pass = rep.max_over_shoot <= over_tol && rep.max_under_shoot <= eps_target;
  return rep;
}

RepresentationReport verify_representation(const SurfaceIntegrand& kappa, const ArctanFamily& family,
                                           const std::vector<RepresentationSample>& samples, double eps_target) {
  if (!kappa.kappa) throw Error(ErrorKind::InvalidKappa, "integrand has no kappa(x, xi)");
  if (samples.empty()) throw Error(ErrorKind::InvalidParams, "no representation samples");
  RepresentationReport rep;
  rep.eps_target = eps_target;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if ((s.r - s.t).norm() == 0.0) throw Error(ErrorKind::DegenerateSample, "sample " + std::to_string(i) + " has r = t");
    const double target = kappa.kappa(s.x, s.xi);
    const std::vector<Vec> b = family.selections().evaluate_all(s.x);
    // Since 0 <= theta_h <= 1, every member pairs to at most max_l |<b_l, xi>|: a bound on the whole family.
    double upper = 0.0;
    for (const Vec& bl : b) upper = std::max(upper, std::abs(bl.dot(s.xi)));
    // Lower bound from the anchors within 2^-6 of t.
    double lower = -INFINITY;
    for (const Vec& p : family.anchors()) {
      if ((p - s.t).lpNorm<Eigen::Infinity>() > 1.0 / 64) continue;
      for (const Vec& bl : b) {
        const double bx = bl.dot(s.xi);
        const double yr = (s.r - p).dot(bl), yt = (s.t - p).dot(bl);
        for (double h : family.h_grid()) {
          const ThetaFamily th{h};
          lower = std::max(lower, (th(yr) - th(yt)) * bx);
        }
      }
    }
    const double over = positive_part(upper - target), under = positive_part(target - lower);
    if (over > rep.max_over_shoot) {
      rep.max_over_shoot = over;
      rep.worst_over = i;
    }
    if (under > rep.max_under_shoot) {
      rep.max_under_shoot = under;
      rep.worst_under = i;
    }
  }
  rep.pass = rep.max_over_shoot <= 1e-8 && rep.max_under_shoot <= eps_target;
  return rep;
}

std::vector<RepresentationSample> representation_samples(int dim, std::size_t count, std::uint64_t seed, double x_lo,
                                                         double x_hi, double r_lo, double r_hi, double min_jump,
                                                         int lattice_level) {
  if (dim != 1 && dim != 2) throw Error(ErrorKind::InvalidParams, "samples are available in d = 1, 2");
  if (!(x_lo < x_hi) || !(r_lo < r_hi)) throw Error(ErrorKind::InvalidParams, "empty sampling box");
  if (!(min_jump > 0) || min_jump >= (r_hi - r_lo)) throw Error(ErrorKind::InvalidParams, "min_jump out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(x_lo, x_hi), ur(r_lo, r_hi), uang(0.0, 2 * kPi);
  const double scale = std::ldexp(1.0, lattice_level);
  auto lattice = [&](double v) { return std::clamp(std::round(v * scale) / scale, r_lo, r_hi); };
  std::vector<RepresentationSample> out;
  out.reserve(count);
  while (out.size() < count) {
    RepresentationSample s;
    s.x.resize(dim);
    s.r.resize(dim);
    s.t.resize(dim);
    for (int c = 0; c < dim; ++c) {
      s.x(c) = ux(rng);
      s.r(c) = lattice(ur(rng));
      s.t(c) = lattice(ur(rng));
    }
    if (dim == 1) {
      s.xi = vec1(rng() & 1 ? 1.0 : -1.0);
    } else {
      const double a = uang(rng);
      s.xi = vec2(std::cos(a), std::sin(a));
    }
    if ((s.r - s.t).norm() < min_jump) continue;
    out.push_back(std::move(s));
  }
  return out;
}

MollifiedField mollify_field(const VectorFieldNA& g, double eps, const MollifierAlpha& rho, const QuadratureSpec& quad,
                             const SamplingBox& box, int n) {
  if (!g.potential) throw Error(ErrorKind::MissingPotential, "field '" + g.name + "' has no potential");
  if (!(eps > 0)) throw Error(ErrorKind::InvalidParams, "mollification radius must be positive");
  if (rho.dim() != g.dim) throw Error(ErrorKind::DimensionMismatch, "mollifier and field dimensions differ");
  if (!g.lipschitz_L) throw Error(ErrorKind::MissingEvaluator, "field '" + g.name + "' has no Lipschitz constant");
  const int d = g.dim;
  const VectorFieldNA base = g;

  VectorFieldNA out;
  out.name = g.name + "*rho";
  out.dim = d;
  out.value = [base, eps, rho, quad, d](const VecRef& x, const VecRef& r) -> Vec {
    return integrate_unit_ball_matrix<Mat>([&](const Vec& z) -> Mat { return base.value(x, r - eps * z); }, rho, quad,
                                           d, 1);
  };
  out.potential = [base, eps, rho, quad](const VecRef& x, const VecRef& r) {
    return integrate_unit_ball([&](const Vec& z) { return base.potential(x, r - eps * z); }, rho, quad);
  };
  if (g.grad_r) {
    out.grad_r = [base, eps, rho, quad, d](const VecRef& x, const VecRef& r) -> Mat {
      return integrate_unit_ball_matrix<Mat>([&](const Vec& z) -> Mat { return base.grad_r(x, r - eps * z); }, rho,
                                             quad, d, d);
    };
  } else {
    const FieldEval v = out.value;
    out.grad_r = [v, d, eps](const VecRef& x, const VecRef& r) -> Mat {
      const double step = 1e-3 * eps;
      Mat J(d, d);
      for (int j = 0; j < d; ++j) {
        Vec rp = r, rm = r;
        rp(j) += step;
        rm(j) -= step;
        J.col(j) = (v(x, rp) - v(x, rm)) / (2 * step);
      }
      return J;
    };
  }
  if (g.grad_x) {
    out.grad_x = [base, eps, rho, quad, d](const VecRef& x, const VecRef& r) -> Mat {
      return integrate_unit_ball_matrix<Mat>([&](const Vec& z) -> Mat { return base.grad_x(x, r - eps * z); }, rho,
                                             quad, d, d);
    };
  }
  if (g.div_x) {
    out.div_x = [base, eps, rho, quad](const VecRef& x, const VecRef& r) {
      return integrate_unit_ball([&](const Vec& z) { return base.div_x(x, r - eps * z); }, rho, quad);
    };
  }
  // Averaging preserves sup bounds, x-moduli and Lipschitz constants; the r-modulus of the gradient is
  // L |r - s| int |grad rho_eps| = L |r - s| int |grad alpha| / eps.
  out.h1 = g.h1;
  out.h2 = g.h2;
  out.omega = g.omega;
  out.lipschitz_L = g.lipschitz_L;
  out.bound_M = g.bound_M;
  const double grad_mass =
      integrate_unit_ball([&](const Vec& z) { return rho.gradient(z).norm() / std::max(rho(z), 1e-300); }, rho, quad);
  out.omega_tilde = Modulus{*g.lipschitz_L * grad_mass / eps, 1.0};
  out.declared = {Condition::G1, Condition::G2, Condition::G3, Condition::G3Prime,
                  Condition::G4, Condition::G5, Condition::G6};
  out.exceptional_points = g.exceptional_points;
  out.restricted_validity = g.restricted_validity;
  out = out.normalized();

  MollifiedField res;
  res.gap_bound = *g.lipschitz_L * eps;
  const int nn = std::max(n, 2);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      const double sx = double(i) / (nn - 1), sr = double(j) / (nn - 1);
      const Vec x = box.x_lo + sx * (box.x_hi - box.x_lo);
      const Vec r = box.r_lo + sr * (box.r_hi - box.r_lo);
      res.sampled_gap = std::max(res.sampled_gap, (g.value(x, r) - out.value(x, r)).norm());
    }
  res.field = std::move(out);
  return res;
}

InfConvolution::InfConvolution(PiecewiseFn1D a, double h, std::vector<std::pair<double, double>> point_values)
    : a_(std::move(a)), h_(h) {
  if (!(h > 0)) throw Error(ErrorKind::InvalidParams, "inf-convolution parameter h must be positive");
  if (a_.dim() != 1) throw Error(ErrorKind::InvalidParams, "inf-convolution needs a scalar amplitude");
  for (std::size_t i = 0; i < a_.num_pieces(); ++i) {
    const auto [lo, hi] = a_.piece_interval(i);
    const Polynomial& p = a_.piece(i);
    double m = std::min(p(lo), p(hi));
    for (double c : real_roots(p.derivative(), lo, hi)) m = std::min(m, p(c));
    if (m < -1e-12) throw Error(ErrorKind::InvalidParams, "amplitude must be non-negative");
  }
  const auto& bps = a_.breakpoints();
  for (const auto& [x0, v] : point_values) {
    std::size_t b = bps.size();
    for (std::size_t k = 0; k < bps.size(); ++k)
      if (std::abs(bps[k] - x0) <= 1e-12) b = k;
    if (b == bps.size()) throw Error(ErrorKind::InvalidParams, "point value declared away from a breakpoint");
    const double lower = std::min(a_.trace_minus(b)(0), a_.trace_plus(b)(0));
    if (std::abs(v - lower) > 1e-12)
      throw Error(ErrorKind::NotLowerValue, "value at " + std::to_string(x0) + " differs from the lower limit");
  }
}

double InfConvolution::operator()(double x) const {
  double best = INFINITY;
  for (std::size_t i = 0; i < a_.num_pieces(); ++i) {
    const auto [lo, hi] = a_.piece_interval(i);
    const Polynomial& p = a_.piece(i);
    auto try_at = [&](double y) { best = std::min(best, p(y) + h_ * std::abs(x - y)); };
    try_at(lo);
    try_at(hi);
    if (x > lo && x < hi) try_at(x);
    const Polynomial dp = p.derivative();
    // Interior critical points: p' = h left of x, p' = -h right of x.
    if (lo < std::min(x, hi))
      for (double y : real_roots(dp - Polynomial::constant(h_), lo, std::min(x, hi))) try_at(y);
    if (std::max(x, lo) < hi)
      for (double y : real_roots(dp + Polynomial::constant(h_), std::max(x, lo), hi)) try_at(y);
  }
  return best;
}

InfConvolution inf_convolution_approx(const PiecewiseFn1D& a, double h,
                                      std::vector<std::pair<double, double>> point_values) {
  return InfConvolution(a, h, std::move(point_values));
}

std::string_view to_string(SjcMode m) {
  switch (m) {
    case SjcMode::Autonomous: return "autonomous";
    case SjcMode::NA: return "NA";
    case SjcMode::BV: return "BV";
  }
  return "unknown";
}

SjcMode sjc_mode_from_string(std::string_view s) {
  std::string low(s);
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  if (low == "autonomous") return SjcMode::Autonomous;
  if (low == "na") return SjcMode::NA;
  if (low == "bv") return SjcMode::BV;
  throw Error(ErrorKind::InvalidParams, "unknown certification mode '" + std::string(s) + "'");
}

namespace {

struct Certifier {
  const SurfaceIntegrand& phi;
  SjcMode mode;
  const CertifyOptions& opts;
  CertificationReport rep;
  std::vector<RepresentationSample> samples;
  SamplingBox box;

  void fail(const std::string& clause) {
    if (rep.failing_clause.empty()) rep.failing_clause = clause;
  }

  double eval(const RepresentationSample& s) const { return phi(s.x, s.r, s.t, s.xi); }

  void necessary_checks() {
    std::vector<RepresentationSample> probes;
    if (phi.dim == 1) {
      const double xm = 0.5 * (opts.x_lo + opts.x_hi);
      const std::pair<double, double> pairs[] = {{2, 0}, {1, 0}, {0.5, 0}, {0, 2}, {-1, 1}, {1.5, -1.5}};
      for (auto [r, t] : pairs)
        for (double xi : {1.0, -1.0}) probes.push_back({vec1(xm), vec1(r), vec1(t), vec1(xi)});
    }
    probes.insert(probes.end(), samples.begin(), samples.end());

    double min_value = INFINITY;
    for (const auto& s : probes) {
      const double v = eval(s);
      min_value = std::min(min_value, v);
      const Vec mxi = -s.xi;
      rep.swap_gap = std::max(rep.swap_gap, std::abs(v - phi(s.x, s.t, s.r, mxi)) / (1 + std::abs(v)));
      for (double w : {0.5, 0.25, 0.75}) {
        const Vec mid = s.r + w * (s.t - s.r);
        const double gap = v - phi(s.x, s.r, mid, s.xi) - phi(s.x, mid, s.t, s.xi);
        if (gap > rep.triangle_gap) rep.triangle_gap = gap;
        const double rel = v > 0 ? gap / v : 0.0;
        if (rel > rep.triangle_relative_gap) {
          rep.triangle_relative_gap = rel;
          rep.triangle_witness.clear();
          if (phi.dim == 1) rep.triangle_witness = {s.x(0), s.r(0), mid(0), s.t(0), s.xi(0)};
        }
      }
    }
    if (min_value < -1e-12) fail("non-negativity");
    if (rep.swap_gap > 1e-10) fail("swap symmetry phi(x, r, t, xi) = phi(x, t, r, -xi)");
    if (rep.triangle_gap > 1e-10) fail("subadditivity in the jump (triangle inequality)");
  }

  void classification() {
    const bool flag = mode == SjcMode::Autonomous ? phi.symmetric_jointly_convex
                      : mode == SjcMode::NA       ? phi.na_sjc
                                                  : phi.bv_sjc;
    if (!flag) fail("classification: integrand is not declared " + std::string(to_string(mode)) + " admissible");
  }

  void absorb(const RepresentationReport& r) {
    rep.over_shoot = std::max(rep.over_shoot, r.max_over_shoot);
    rep.under_shoot = std::max(rep.under_shoot, r.max_under_shoot);
  }

  void table(const VectorFieldNA& g) {
    ConditionReport t = validate_conditions(g, box, opts.validate_grid, opts.validate_grid);
    if (!t.all_passed()) fail("condition table of " + g.name);
    rep.condition_tables.push_back(std::move(t));
  }

  void model_case() {
    const VectorFieldNA& g = *phi.model_field;
    rep.family_size = 1;
    absorb(verify_representation(
        phi.eval,
        [&g](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
          return positive_part((g.value(x, r) - g.value(x, t)).dot(xi));
        },
        samples, opts.eps_target));
    table(g);
    rep.b3_declared = g.lipschitz_L;
  }

  void sup_family() {
    const auto& fam = phi.family;
    rep.family_size = fam.size() + 1;
    const Amplitude a = phi.amplitude;
    const bool autonomous = phi.kind == IntegrandKind::Splitting;
    const Vec origin = Vec::Zero(phi.dim);
    absorb(verify_representation(
        phi.eval,
        [&](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
          double best = 0.0;
          for (const auto& g : fam) {
            const Vec& gx = autonomous ? origin : Vec(x);
            best = std::max(best, (g.value(gx, r) - g.value(gx, t)).dot(xi));
          }
          return autonomous ? a(x) * best : best;
        },
        samples, opts.eps_target));
    double L = 0.0;
    bool all_l = true;
    for (const auto& g : fam) {
      table(g);
      if (g.lipschitz_L)
        L = std::max(L, *g.lipschitz_L);
      else
        all_l = false;
    }
    if (all_l) rep.b3_declared = (autonomous ? amplitude_sup(a, opts.x_lo, opts.x_hi) : 1.0) * L;
  }

  // Members +-a(x) gamma(|s - p|), potentials +-a(x) sign(s - p) Gamma(|s - p|), plus the zero field.
  void profile_family() {
    if (phi.dim != 1) {
      fail("no constructive generating family for trace-dependent integrands in d = 2");
      return;
    }
    const JumpProfile gamma = *phi.profile;
    std::vector<Vec> ts;
    for (const auto& s : samples) ts.push_back(s.t);
    const std::vector<Vec> anchors = dyadic_anchors(ts, opts.anchor_levels);
    rep.family_size = 2 * anchors.size() + 1;
    const Amplitude a = phi.amplitude;
    absorb(verify_representation(
        phi.eval,
        [&](const VecRef& x, const VecRef& r, const VecRef& t, const VecRef& xi) {
          double best = 0.0;
          for (const Vec& p : anchors) {
            const double d = gamma(std::abs(r(0) - p(0))) - gamma(std::abs(t(0) - p(0)));
            best = std::max(best, std::abs(d * xi(0)));
          }
          return a(x) * best;
        },
        samples, opts.eps_target));

    const double sup_a = amplitude_sup(a, opts.x_lo, opts.x_hi);
    const double reach = gamma(opts.r_hi - opts.r_lo + 2.0);
    const std::vector<double> jumps = a.discontinuities();
    const std::vector<double> reps{0.0, anchors.front()(0), anchors.back()(0)};
    for (int k = 0; k < std::min<int>(opts.representative_members, int(reps.size())); ++k) {
      const double p = reps[std::size_t(k)], sigma = k % 2 == 0 ? 1.0 : -1.0;
      VectorFieldNA g;
      g.name = std::string("profile[") + (sigma > 0 ? "+" : "-") + ",p=" + std::to_string(p) + "]";
      g.dim = 1;
      g.value = [a, gamma, p, sigma](const VecRef& x, const VecRef& s) {
        return vec1(sigma * a(x) * gamma(std::abs(s(0) - p)));
      };
      g.potential = [a, gamma, p, sigma](const VecRef& x, const VecRef& s) {
        const double y = s(0) - p;
        return sigma * a(x) * (y < 0 ? -1.0 : 1.0) * gamma.integral(std::abs(y));
      };
      g.h1 = [a, reach](const VecRef& x) { return a(x) * reach; };
      g.declared = {Condition::G1, Condition::G6};
      if (gamma.lipschitz) {
        g.lipschitz_L = sup_a * *gamma.lipschitz;
        g.declared.insert(Condition::G3Prime);
      }
      for (double j : jumps) g.exceptional_points.push_back(vec1(j));
      table(g.normalized());
    }
    if (gamma.lipschitz) rep.b3_declared = sup_a * *gamma.lipschitz;
  }

  void kappa_family() {
    DeGiorgiSettings settings = opts.degiorgi;
    QuadratureSpec quad = opts.quad;
    if (phi.dim == 2) {
      // Polar quadrature per coefficient is costly; a coarser index lattice keeps 2D runs at desk scale.
      settings.j_max = std::min(settings.j_max, 8);
      settings.spacing = std::max(settings.spacing, 0.25);
      settings.radius = std::min(settings.radius, 1.0);
      quad = QuadratureSpec{4, 2, quad.levels};
    }
    std::vector<Vec> ts;
    for (const auto& s : samples) ts.push_back(s.t);
    try {
      auto sel = std::make_shared<const DeGiorgiSelections>(phi.kappa, phi.dim, settings, quad);
      const ArctanFamily fam =
          build_arctan_family(phi, opts.h_grid, sel, dyadic_anchors(ts, opts.anchor_levels), opts.x_lo, opts.x_hi);
      rep.family_size = fam.size();
      absorb(verify_representation(phi, fam, samples, opts.eps_target));
      const std::size_t L = sel->size();
      const int m = std::max(1, opts.representative_members);
      for (int k = 0; k < m; ++k) {
        const std::size_t l = (L - 1) * std::size_t(k) / std::size_t(std::max(1, m - 1));
        table(fam.member(std::min<std::size_t>(std::size_t(k % 2), opts.h_grid.size() - 1), l, 0));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidKappa) throw;
      fail(std::string("kappa hypotheses: ") + e.what());
    }
    rep.b3_declared = 0.0;
  }

  void bv_checks() {
    // (B1): value at declared jump points of phi(., r, t, xi) equals the lower one-sided limit.
    if (phi.dim == 1) {
      for (double x0 : phi.x_discontinuities)
        for (const auto& s : samples) {
          const double v = phi(vec1(x0), s.r, s.t, s.xi);
          const double lo = std::min(phi(vec1(x0 - 1e-9), s.r, s.t, s.xi), phi(vec1(x0 + 1e-9), s.r, s.t, s.xi));
          rep.lower_value_gap = std::max(rep.lower_value_gap, std::abs(v - lo));
        }
      if (rep.lower_value_gap > 1e-6) fail("(B1) lower-value normalization at x-discontinuities");
    }
    // (B3): uniform Lipschitz bound in the trace.
    for (const auto& s : samples) {
      const Vec e = (s.r - s.t).normalized();
      const double v = eval(s);
      for (double delta : {1e-3, 0.1}) {
        const Vec r2 = s.r + delta * e;
        rep.b3_sampled = std::max(rep.b3_sampled, std::abs(v - phi(s.x, r2, s.t, s.xi)) / delta);
      }
    }
    if (!rep.b3_declared)
      fail("(B3) no Lipschitz constant available");
    else if (rep.b3_sampled > *rep.b3_declared * (1 + 1e-3) + 1e-9)
      fail("(B3) sampled Lipschitz quotient exceeds the declared constant");
    // Increasing Lipschitz approximation of a piecewise amplitude from below.
    if (const auto& pw = phi.amplitude.piecewise_function()) {
      std::vector<InfConvolution> ah;
      for (double h : opts.h_grid) ah.emplace_back(*pw, h);
      bool monotone = true;
      for (const auto& s : samples) {
        const double x = s.x(0), ax = phi.amplitude(x);
        double prev = -INFINITY;
        for (const auto& f : ah) {
          const double v = f(x);
          monotone = monotone && v >= prev - 1e-12 && v <= ax + 1e-12;
          prev = v;
        }
        rep.amplitude_gap = std::max(rep.amplitude_gap, ax - ah.back()(x));
      }
      if (!monotone) fail("monotone approximation of the amplitude from below");
    }
  }

  void run() {
    rep.mode = mode;
    rep.tag = phi.tag;
    if (!phi.eval) throw Error(ErrorKind::InvalidParams, "integrand has no evaluator");
    samples = representation_samples(phi.dim, opts.samples, opts.seed, opts.x_lo, opts.x_hi, opts.r_lo, opts.r_hi,
                                     opts.min_jump, opts.anchor_levels);
    box = SamplingBox::cube(phi.dim, opts.x_lo, opts.x_hi, opts.r_lo, opts.r_hi);
    necessary_checks();
    classification();
    switch (phi.kind) {
      case IntegrandKind::ModelCase:
        if (!phi.model_field) throw Error(ErrorKind::InvalidParams, "model case without a field");
        model_case();
        break;
      case IntegrandKind::SupFamily: sup_family(); break;
      case IntegrandKind::Splitting:
        if (phi.profile)
          profile_family();
        else if (!phi.family.empty())
          sup_family();
        else
          fail("no generating family");
        break;
      case IntegrandKind::KappaXXi: kappa_family(); break;
      case IntegrandKind::Custom: fail("no generating family for a custom integrand"); break;
    }
    if (rep.over_shoot > 1e-8) fail("representation over-shoot");
    if (rep.under_shoot > opts.eps_target) fail("representation under-shoot");
    if (mode == SjcMode::BV) bv_checks();
    rep.certified = rep.failing_clause.empty();
  }
};

}  // namespace

CertificationReport certify_sjc(const SurfaceIntegrand& phi, SjcMode mode, const CertifyOptions& opts) {
  Certifier c{phi, mode, opts, {}, {}, {}};
  c.run();
  return c.rep;
}

CertificationReport require_sjc(const SurfaceIntegrand& phi, SjcMode mode, const CertifyOptions& opts) {
  CertificationReport rep = certify_sjc(phi, mode, opts);
  if (!rep.certified) throw Error(ErrorKind::NotCertifiable, rep.failing_clause);
  return rep;
}

}  // namespace gsbdlab
