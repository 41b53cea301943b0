#include "gsbdlab/catalog.hpp"
#include "gsbdlab/energy.hpp"

#include <doctest.h>

#include <random>

using namespace gsbdlab;

namespace {

EnergySpec quadratic_spec(double kappa0, Confinement psi) {
  EnergySpec s;
  s.W = bulk::quadratic();
  CatalogParams p;
  p.amplitude = Amplitude::constant(kappa0);
  p.norm = norms::euclidean();
  s.phi = make_catalog_integrand(CatalogKind::AmpTimesKappaXi, p);
  s.psi = std::move(psi);
  return s;
}

const ConditionResult& result_for(const ConditionReport& r, Condition c) {
  const ConditionResult* res = r.find(c);
  REQUIRE(res != nullptr);
  return *res;
}

}  // namespace

TEST_CASE("eval_energy examples") {
  const QuadratureSpec q;
  {
    EnergySpec s = quadratic_spec(1.0, confinement::quadratic(1.0));
    const auto l = eval_energy(s, PiecewiseFn1D::constant(0.0, 1.0, 0.0), q);
    CHECK(l.bulk == 0.0);
    CHECK(l.surface == 0.0);
    CHECK(l.confinement == 0.0);
    CHECK(l.boundary == 0.0);
    CHECK(l.total == 0.0);
  }
  const EnergySpec s = quadratic_spec(0.1, confinement::zero());
  const auto affine = eval_energy(s, PiecewiseFn1D::affine(0.0, 1.0, 0.0, 0.5), q);
  CHECK(affine.bulk == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(affine.surface == 0.0);
  const auto step = eval_energy(s, PiecewiseFn1D::step(0.0, 1.0, 0.5, 0.0, 0.5), q);
  CHECK(step.bulk == 0.0);
  CHECK(step.surface == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("energy total is the sum of its parts") {
  EnergySpec s = quadratic_spec(0.3, confinement::quadratic(2.0));
  s.boundary = BoundaryPenalty{vec1(0.1), vec1(-0.2), 5.0};
  const PiecewiseFn1D u(0.0, 1.0, {0.4}, {{Polynomial{0.0, 1.0, -2.0}}, {Polynomial{1.0, 0.5}}});
  const auto l = eval_energy(s, u, QuadratureSpec{});
  CHECK(l.total == l.bulk + l.surface + l.confinement + l.boundary);
  CHECK(l.boundary == doctest::Approx(5.0 * (0.01 + std::pow(1.5 + 0.2, 2))).epsilon(1e-14));
}

TEST_CASE("energy errors") {
  EnergySpec s = quadratic_spec(1.0, confinement::zero());
  const Vec two = Vec::Ones(2);
  CHECK_THROWS_AS(eval_energy(s, PiecewiseFn1D::constant(0.0, 1.0, two), QuadratureSpec{}), Error);
  s.p = 1.0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("catalog examples") {
  CatalogParams mc;
  mc.field = fields::clamped_tanh();
  mc.x_lo = -2.0;
  mc.x_hi = 2.0;
  const auto model = make_catalog_integrand(CatalogKind::ModelCase, mc);
  CHECK(model(0.3, 0.7, 0.7, 1.0) == 0.0);
  CHECK(model(0.3, 1.0, -1.0, 1.0) == doctest::Approx(2 * 1.09 * std::tanh(1.0)).epsilon(1e-14));
  CHECK(model(0.3, 1.0, -1.0, -1.0) == 0.0);

  CatalogParams g;
  g.profile = profiles::linear();
  const auto amp_gamma = make_catalog_integrand(CatalogKind::AmpTimesGamma, g);
  CHECK(amp_gamma(0.4, 1.0, 0.0, 1.0) == 1.0);
  CHECK(amp_gamma.tag == "amp_times_gamma");

  CatalogParams k;
  k.dim = 2;
  k.amplitude = Amplitude::constant(2.0);
  k.norm = norms::euclidean();
  const auto amp_kappa = make_catalog_integrand(CatalogKind::AmpTimesKappaXi, k);
  CHECK(amp_kappa(vec2(0.1, 0.2), vec2(1, 0), vec2(0, 0), vec2(0.6, 0.8)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("catalog parameter checks") {
  CatalogParams p;
  p.profile = profiles::superadditive();
  CHECK_THROWS_AS(make_catalog_integrand(CatalogKind::ConvexNormalJump, p), Error);
  CatalogParams q;
  q.norm = norms::lopsided();
  CHECK_THROWS_AS(make_catalog_integrand(CatalogKind::AmpTimesKappaXi, q), Error);
  CatalogParams m;
  CHECK_THROWS_AS(make_catalog_integrand(CatalogKind::ModelCase, m), Error);
  // Superadditive profiles build, but are not classified as jointly convex.
  const auto sup = make_catalog_integrand(CatalogKind::AmpTimesGamma, p);
  CHECK_FALSE(sup.symmetric_jointly_convex);
  CHECK_FALSE(sup.na_sjc);
}

TEST_CASE("model case classification follows declared conditions") {
  CatalogParams mc;
  mc.field = fields::sin_tanh();
  const auto phi = make_catalog_integrand(CatalogKind::ModelCase, mc);
  CHECK(phi.na_sjc);
  // Flags trust the declaration; the skew shear control declares (G6) falsely and only sampling exposes it.
  CatalogParams skew;
  skew.dim = 2;
  skew.field = fields::skew_shear();
  const auto bad = make_catalog_integrand(CatalogKind::ModelCase, skew);
  CHECK(bad.symmetric_jointly_convex);
  CHECK_FALSE(validate_conditions(*bad.model_field, SamplingBox::cube(2, 0.0, 1.0, -1.0, 1.0)).all_passed());
}

TEST_CASE("catalog integrands are non-negative and the model case is swap symmetric") {
  std::vector<SurfaceIntegrand> all;
  CatalogParams a;
  a.amplitude = Amplitude::piecewise(PiecewiseFn1D::piecewise_constant(0.0, 1.0, {0.5}, {1.0, 2.0}));
  a.profile = profiles::capped(1.0);
  all.push_back(make_catalog_integrand(CatalogKind::AmpTimesGamma, a));
  all.push_back(make_catalog_integrand(CatalogKind::Splitting, a));
  a.profile = profiles::linear(2.0);
  all.push_back(make_catalog_integrand(CatalogKind::ConvexNormalJump, a));
  CatalogParams o = a;
  o.thetas = {profiles::arctan(2.0)};
  all.push_back(make_catalog_integrand(CatalogKind::OrthoSup, o));
  CatalogParams n = a;
  n.norm = norms::euclidean();
  all.push_back(make_catalog_integrand(CatalogKind::AmpTimesKappaXi, n));
  CatalogParams kx;
  kx.kappa = [](const VecRef& x, const VecRef& xi) { return (1 + x.squaredNorm()) * xi.norm(); };
  all.push_back(make_catalog_integrand(CatalogKind::KappaXXi, kx));
  CatalogParams mc;
  mc.field = fields::sin_tanh();
  const auto model = make_catalog_integrand(CatalogKind::ModelCase, mc);
  all.push_back(model);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> X(0.0, 1.0), R(-3.0, 3.0);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < 10000; ++i) {
    const double x = X(rng), r = R(rng), t = R(rng), xi = sign(rng) ? 1.0 : -1.0;
    for (const auto& phi : all) CHECK_MESSAGE(phi(x, r, t, xi) >= 0.0, phi.tag);
    CHECK(model(x, r, t, xi) == model(x, t, r, -xi));
  }
}

TEST_CASE("strictly positive lower bound holds on samples") {
  CatalogParams n;
  n.amplitude = Amplitude::constant(0.7);
  n.norm = norms::euclidean();
  const auto phi = make_catalog_integrand(CatalogKind::AmpTimesKappaXi, n);
  REQUIRE(phi.strictly_positive_c.has_value());
  for (double x : {0.0, 0.3, 1.0})
    for (double xi : {-2.0, -0.5, 0.5, 2.0}) CHECK(phi(x, 0.0, 1.0, xi) >= *phi.strictly_positive_c * std::abs(xi));
}

TEST_CASE("validate_conditions examples") {
  const auto box01 = SamplingBox::cube(1, 0.0, 1.0, 0.0, 1.0);
  const auto xr = validate_conditions(fields::x_times_r(), box01);
  const auto& g6 = result_for(xr, Condition::G6);
  CHECK(g6.passed);
  CHECK(g6.potential_gap <= 1e-10);
  CHECK(xr.restricted_validity);

  const auto box2 = SamplingBox::cube(2, 0.0, 1.0, -1.0, 1.0);
  const auto skew = validate_conditions(fields::skew_shear(), box2);
  const auto& s6 = result_for(skew, Condition::G6);
  CHECK_FALSE(s6.passed);
  CHECK(s6.witness == doctest::Approx(1.0).epsilon(1e-12));

  const auto zero = validate_conditions(fields::zero(2), box2);
  CHECK(zero.all_passed());
  CHECK_FALSE(zero.results.empty());
}

TEST_CASE("every passing conservative catalog field has a symmetric Jacobian") {
  const auto box1 = SamplingBox::cube(1, 0.0, 1.0, -2.0, 2.0);
  const auto box2 = SamplingBox::cube(2, 0.0, 1.0, -2.0, 2.0);
  for (const auto& g : {fields::sin_tanh(), fields::tanh_field(), fields::identity(1)}) {
    const auto rep = validate_conditions(g, box1);
    CHECK_MESSAGE(rep.all_passed(), g.name);
  }
  const auto id2 = validate_conditions(fields::identity(2), box2);
  CHECK(id2.all_passed());
  for (int i = 0; i < 8; ++i) {
    const Vec x = vec2(0.1 * i, 0.05 * i), r = vec2(-1.0 + 0.3 * i, 0.7 - 0.2 * i);
    const Mat J = fields::identity(2).grad_r(x, r);
    CHECK((J - J.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("missing evaluators are reported") {
  VectorFieldNA g = fields::tanh_field();
  g.potential = nullptr;
  try {
    validate_conditions(g, SamplingBox::cube(1, 0.0, 1.0, -1.0, 1.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingEvaluator);
  }
}

TEST_CASE("piecewise amplitudes take the lower value at jumps") {
  const auto a = Amplitude::piecewise(PiecewiseFn1D::piecewise_constant(0.0, 1.0, {0.5}, {1.0, 2.0}));
  CHECK(a(0.5) == 1.0);
  CHECK(a(0.75) == 2.0);
  CHECK_FALSE(a.is_sobolev());
  REQUIRE(a.discontinuities().size() == 1);
  CHECK(a.discontinuities()[0] == 0.5);
}

TEST_CASE("potential check tolerates a kink next to a sample point") {
  // Kink 3e-6 from the grid point 6/7, well inside one finite-difference step.
  const double c = 6.0 / 7 + 3e-6;
  VectorFieldNA g;
  g.name = "capped_identity";
  g.value = [c](const VecRef&, const VecRef& r) { return vec1(std::min(r(0), c)); };
  g.potential = [c](const VecRef&, const VecRef& r) {
    return r(0) <= c ? 0.5 * r(0) * r(0) : c * r(0) - 0.5 * c * c;
  };
  g.lipschitz_L = 1.0;
  g.declared = {Condition::G6};
  const auto box = SamplingBox::cube(1, 0.0, 1.0, -2.0, 2.0);
  const auto& ok = result_for(validate_conditions(g, box), Condition::G6);
  CHECK(ok.passed);
  CHECK(ok.potential_gap > 1e-6);  // the plain tolerance alone would reject it

  g.potential = [](const VecRef&, const VecRef& r) { return 0.5 * r(0) * r(0); };
  CHECK_FALSE(result_for(validate_conditions(g, box), Condition::G6).passed);
}
