#include "gsbdlab/piecewise.hpp"

#include <doctest.h>

#include <random>

using namespace gsbdlab;

TEST_CASE("eval on constant, identity and step") {
  const auto c = PiecewiseFn1D::constant(0.0, 1.0, 3.5);
  CHECK(c.eval(0.37)(0) == 3.5);
  const auto id = PiecewiseFn1D::affine(0.0, 1.0, 0.0, 1.0);
  CHECK(id.eval(0.25)(0) == doctest::Approx(0.25).epsilon(1e-15));
  const auto s = PiecewiseFn1D::step(0.0, 1.0, 0.5, 0.0, 1.0);
  CHECK(s.eval(0.75)(0) == 1.0);
  CHECK(s.eval(0.25)(0) == 0.0);
}

TEST_CASE("eval rejects points outside the domain and on breakpoints") {
  const auto s = PiecewiseFn1D::step(0.0, 1.0, 0.5, 0.0, 1.0);
  auto kind_of = [&](double x) {
    try {
      s.eval(x);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ConfigError;
  };
  CHECK(kind_of(1.5) == ErrorKind::OutOfDomain);
  CHECK(kind_of(-0.1) == ErrorKind::OutOfDomain);
  CHECK(kind_of(0.5) == ErrorKind::AmbiguousPoint);
}

TEST_CASE("construction validates breakpoints and degree") {
  CHECK_THROWS_AS(PiecewiseFn1D::piecewise_constant(0.0, 1.0, {0.6, 0.4}, {0, 1, 2}), Error);
  CHECK_THROWS_AS(PiecewiseFn1D::piecewise_constant(0.0, 1.0, {1.0}, {0, 1}), Error);
  std::vector<double> coeffs(kMaxPieceDegree + 2, 1.0);
  Vec c = Eigen::Map<Vec>(coeffs.data(), Eigen::Index(coeffs.size()));
  CHECK_THROWS_AS(PiecewiseFn1D(0.0, 1.0, {}, {{Polynomial(c)}}), Error);
}

TEST_CASE("jump_set in 1D") {
  CHECK(jump_set(PiecewiseFn1D::affine(0.0, 1.0, 1.0, 2.0)).empty());
  const auto j = jump_set(PiecewiseFn1D::step(0.0, 1.0, 0.5, 0.0, 1.0));
  REQUIRE(j.size() == 1);
  CHECK(j[0].location(0) == 0.5);
  CHECK(j[0].trace_minus(0) == 0.0);
  CHECK(j[0].trace_plus(0) == 1.0);
  CHECK(j[0].normal(0) == 1.0);
  CHECK(j[0].amplitude == 1.0);
}

TEST_CASE("removable breakpoints are not jumps") {
  const auto u = PiecewiseFn1D::piecewise_constant(0.0, 1.0, {0.3, 0.6}, {1.0, 1.0 + 1e-12, 2.0});
  const auto j = jump_set(u);
  REQUIRE(j.size() == 1);
  CHECK(j[0].location(0) == 0.6);
}

TEST_CASE("trace consistency and orientation on random functions") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> bps{0.2, 0.45, 0.8};
    std::vector<std::vector<Polynomial>> pieces;
    for (int i = 0; i < 4; ++i) pieces.push_back({Polynomial{U(rng), U(rng), U(rng)}});
    const PiecewiseFn1D u(0.0, 1.0, bps, pieces);
    for (std::size_t b = 0; b < bps.size(); ++b) {
      CHECK(std::abs(u.trace_minus(b)(0) - pieces[b][0](bps[b])) <= 1e-12);
      CHECK(std::abs(u.trace_plus(b)(0) - pieces[b + 1][0](bps[b])) <= 1e-12);
    }
    double prev = -1.0;
    for (const auto& j : jump_set(u)) {
      CHECK(j.normal(0) == 1.0);
      CHECK(j.location(0) > prev);
      prev = j.location(0);
    }
  }
}

TEST_CASE("Field2D jump set and symmetric gradient") {
  AffineMap minus, plus;
  plus.b = Vec2(1.0, 0.0);
  const Field2D u(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(1.0, 0.0), minus, plus);
  const auto jumps = jump_set(u);
  CHECK(jumps.size() == 9);
  for (const auto& j : jumps) {
    CHECK(j.trace_minus.isApprox(Vec2(0, 0)));
    CHECK(j.trace_plus.isApprox(Vec2(1, 0)));
    CHECK(j.normal.isApprox(Vec2(1, 0)));
    CHECK(j.amplitude == 1.0);
  }

  AffineMap shear;
  shear.A << 0, 1, 0, 0;
  const Field2D v(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(1.0, 0.0), shear, shear);
  const Mat2 e = symmetric_gradient(v, Vec2(0.2, 0.3));
  CHECK(e(0, 0) == 0.0);
  CHECK(e(0, 1) == 0.5);
  CHECK(e(1, 0) == 0.5);
  CHECK(e(1, 1) == 0.0);
  CHECK((e - e.transpose()).norm() == 0.0);

  AffineMap rot;
  rot.A << 0, 1, -1, 0;
  const Field2D w(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(1.0, 0.0), rot, rot);
  CHECK(symmetric_gradient(w, Vec2(0.7, 0.1)).norm() == 0.0);
  CHECK_THROWS_AS(symmetric_gradient(w, Vec2(0.5, 0.4)), Error);
}

TEST_CASE("symmetric gradient in 1D is the slope") {
  CHECK(symmetric_gradient(PiecewiseFn1D::affine(0.0, 1.0, 0.0, 3.0), 0.4)(0) == doctest::Approx(3.0));
}

TEST_CASE("Field2D rejects bad geometry") {
  CHECK_THROWS_AS(Field2D(Rectangle{}, Vec2(0.5, 0.2), Vec2(0.5, 1.0), Vec2(1, 0), {}, {}), Error);
  CHECK_THROWS_AS(Field2D(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(0.6, 0.8), {}, {}), Error);
}

TEST_CASE("measure_convergence_gap examples") {
  const auto zero = PiecewiseFn1D::constant(0.0, 1.0, 0.0);
  const auto one = PiecewiseFn1D::constant(0.0, 1.0, 1.0);
  CHECK(measure_convergence_gap(one, one, 1e-3) == 0.0);
  CHECK(measure_convergence_gap(zero, one, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  for (int n : {3, 7, 20}) {
    const auto bump = PiecewiseFn1D::piecewise_constant(0.0, 1.0, {0.5, 0.5 + 1.0 / n}, {0.0, 1.0, 0.0});
    CHECK(measure_convergence_gap(zero, bump, 0.5) == doctest::Approx(1.0 / n).epsilon(1e-12));
  }
  CHECK_THROWS_AS(measure_convergence_gap(zero, PiecewiseFn1D::constant(0.0, 2.0, 0.0), 0.5), Error);
}

TEST_CASE("measure gap against a sampled oracle, symmetric and monotone in delta") {
  const PiecewiseFn1D u(0.0, 1.0, {0.3}, {{Polynomial{0.0, 2.0, -1.0}}, {Polynomial{1.0, -1.0}}});
  const PiecewiseFn1D v(0.0, 1.0, {0.7}, {{Polynomial{0.2, 0.5}}, {Polynomial{-0.3}}});
  double prev = INFINITY;
  for (double delta : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    const double m = measure_convergence_gap(u, v, delta);
    CHECK(m == doctest::Approx(measure_convergence_gap(v, u, delta)).epsilon(1e-14));
    CHECK(m <= prev + 1e-15);
    prev = m;
    const int n = 200000;
    int count = 0;
    for (int i = 0; i < n; ++i) {
      const double x = (i + 0.5) / n;
      if (x == 0.3 || x == 0.7) continue;
      if (std::abs(u.eval(x)(0) - v.eval(x)(0)) > delta) ++count;
    }
    CHECK(std::abs(m - double(count) / n) <= 2e-5);
  }
}

TEST_CASE("Ky Fan distance") {
  const auto zero = PiecewiseFn1D::constant(0.0, 1.0, 0.0);
  CHECK(ky_fan_distance(zero, zero) <= 1e-12);
  const auto bump = PiecewiseFn1D::piecewise_constant(0.0, 1.0, {0.5, 0.6}, {0.0, 1.0, 0.0});
  CHECK(ky_fan_distance(zero, bump) == doctest::Approx(0.1).epsilon(1e-9));
}
