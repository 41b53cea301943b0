#include "gsbdlab/catalog.hpp"
#include "gsbdlab/chainrule.hpp"

#include <doctest.h>

#include <cmath>

using namespace gsbdlab;

namespace {

const QuadratureSpec kQuad{};
const auto kStep = PiecewiseFn1D::step(0.0, 1.0, 0.5, 0.0, 1.0);

Field2D split_square(const AffineMap& minus, const AffineMap& plus) {
  return Field2D(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(1.0, 0.0), minus, plus);
}

ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("1D step with g = x r") {
  const auto l = chain_rule_ledger(fields::x_times_r(), kStep, test_functions::bubble(0.0, 1.0), kQuad);
  CHECK(l.lhs == doctest::Approx(5.0 / 24).epsilon(1e-13));
  CHECK(l.term_divx == doctest::Approx(1.0 / 12).epsilon(1e-13));
  CHECK(l.term_e == 0.0);
  CHECK(l.term_jump == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(std::abs(l.residual) <= 1e-10);
}

TEST_CASE("2D identity field across a chord") {
  AffineMap plus;
  plus.b = Vec2(1.0, 0.0);
  const auto u = split_square(AffineMap{}, plus);
  const auto l = chain_rule_ledger(fields::identity(2), u, test_functions::bubble(Rectangle{}), kQuad);
  CHECK(l.lhs == doctest::Approx(1.0 / 24).epsilon(1e-13));
  CHECK(std::abs(l.term_divx) <= 1e-15);
  CHECK(std::abs(l.term_e) <= 1e-15);
  CHECK(l.term_jump == doctest::Approx(1.0 / 24).epsilon(1e-13));
  CHECK(std::abs(l.residual) <= 1e-10);
}

TEST_CASE("2D affine sides with nonzero symmetric gradient") {
  AffineMap minus, plus;
  minus.A << 1.0, 0.5, 0.0, 2.0;
  plus.A << -0.5, 0.25, 1.0, 0.0;
  plus.b = Vec2(0.3, -0.2);
  const auto l = chain_rule_ledger(fields::identity(2), split_square(minus, plus), test_functions::bubble(Rectangle{}), kQuad);
  CHECK(std::abs(l.term_e) > 1e-3);
  CHECK(std::abs(l.residual) <= 1e-10);
}

TEST_CASE("constant u reduces to integration by parts in x") {
  for (double c : {-0.7, 0.0, 1.3}) {
    const auto u = PiecewiseFn1D::constant(0.0, 1.0, c);
    const auto l = chain_rule_ledger(fields::sin_tanh(), u, test_functions::bubble(0.0, 1.0), kQuad);
    CHECK(l.term_e == 0.0);
    CHECK(l.term_jump == 0.0);
    CHECK(std::abs(l.lhs - l.term_divx) <= 1e-12);
  }
}

TEST_CASE("residual convergence") {
  const auto tb = test_functions::bubble(0.0, 1.0);
  for (const auto& row : residual_convergence(fields::x_times_r(), kStep, tb, 4, kQuad)) CHECK(row.residual <= 1e-10);

  // Low-order rule so the decay is visible before round-off; one panel equals two here since the jump splits it.
  const auto rows = residual_convergence(fields::sin_tanh(), kStep, tb, 6, QuadratureSpec{2, 2, 3});
  REQUIRE(rows.size() == 6);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].panels == 2 * rows[k - 1].panels);
    if (rows[k - 1].residual > 1e-12) CHECK(rows[k].residual <= 0.25 * rows[k - 1].residual);
  }

  for (const auto& row : residual_convergence(fields::sin_tanh(), kStep, test_functions::zero(1), 3, kQuad))
    CHECK(row.residual == 0.0);
}

TEST_CASE("ledger is additive in g") {
  const auto tb = test_functions::bubble(0.0, 1.0);
  const PiecewiseFn1D u(0.0, 1.0, {0.4}, {{Polynomial{0.1, 1.0}}, {Polynomial{-0.5, 0.0, 1.0}}});
  ChainRuleOptions no_check;
  no_check.validate = false;
  const auto a = chain_rule_ledger(fields::sin_tanh(), u, tb, kQuad);
  const auto b = chain_rule_ledger(fields::x_times_r(), u, tb, kQuad);
  const auto s = chain_rule_ledger(fields::sin_tanh() + fields::x_times_r(), u, tb, kQuad, no_check);
  CHECK(std::abs(s.lhs - a.lhs - b.lhs) <= 1e-10);
  CHECK(std::abs(s.term_divx - a.term_divx - b.term_divx) <= 1e-10);
  CHECK(std::abs(s.term_e - a.term_e - b.term_e) <= 1e-10);
  CHECK(std::abs(s.term_jump - a.term_jump - b.term_jump) <= 1e-10);
}

TEST_CASE("continuous u has no jump term") {
  const auto u = PiecewiseFn1D::affine(0.0, 1.0, -1.0, 2.0);
  const auto l = chain_rule_ledger(fields::sin_tanh(), u, test_functions::bubble(0.0, 1.0), kQuad);
  CHECK(l.term_jump == 0.0);
  CHECK(std::abs(l.residual) <= 1e-10);
}

TEST_CASE("flipping the normal and swapping the sides leaves the jump term unchanged") {
  AffineMap minus, plus;
  minus.A << 0.5, 0.0, 0.0, 0.5;
  plus.b = Vec2(1.0, -1.0);
  const auto u = split_square(minus, plus);
  const Field2D flipped(Rectangle{}, Vec2(0.5, 0.0), Vec2(0.5, 1.0), Vec2(-1.0, 0.0), plus, minus);
  const auto tb = test_functions::bubble(Rectangle{});
  const auto l1 = chain_rule_ledger(fields::identity(2), u, tb, kQuad);
  const auto l2 = chain_rule_ledger(fields::identity(2), flipped, tb, kQuad);
  CHECK(l1.term_jump == doctest::Approx(l2.term_jump).epsilon(1e-13));
}

TEST_CASE("chain rule errors") {
  const TestFunction one{1, [](const VecRef&) { return 1.0; }, [](const VecRef&) { return Vec(Vec::Zero(1)); }};
  CHECK(error_of([&] { chain_rule_ledger(fields::x_times_r(), kStep, one, kQuad); }) == ErrorKind::BoundarySupport);
  const auto u2 = split_square(AffineMap{}, AffineMap{});
  CHECK(error_of([&] { chain_rule_ledger(fields::skew_shear(), u2, test_functions::bubble(Rectangle{}), kQuad); }) ==
        ErrorKind::ConditionViolation);
  const auto s = PiecewiseFn1D::step(0.0, 2.0, 1.0, 0.0, 1.0);
  CHECK(error_of([&] { chain_rule_ledger(fields::clamped_tanh(), s, test_functions::bubble(0.0, 2.0), kQuad); }) ==
        ErrorKind::ExceptionalCollision);
}

TEST_CASE("trace identity") {
  Mat2 A;
  A << 0.3, -1.2, 2.0, 0.7;
  CHECK(trace_discrepancy(Mat2::Identity(), A) <= 1e-15);
  Mat2 S, B;
  S << 2, 1, 1, 3;
  B << 0, 1, 0, 0;
  CHECK(std::abs((S * B).trace() - 1.0) <= 1e-15);
  CHECK(trace_discrepancy(S, B) <= 1e-15);

  // Non-symmetric S = [[0,1],[0,0]]: against [[0,0],[1,0]] the discrepancy is 1/2, against a rotation it is 1.
  Mat2 N, L, R;
  N << 0, 1, 0, 0;
  L << 0, 0, 1, 0;
  R << 0, -1, 1, 0;
  CHECK(trace_discrepancy(N, L) == doctest::Approx(0.5));
  CHECK(trace_discrepancy(N, R) == doctest::Approx(1.0));

  AffineMap rot{R, Vec2::Zero()};
  const auto u = split_square(rot, rot);
  const std::vector<Vec2> pts{Vec2(0.2, 0.3), Vec2(0.8, 0.6)};
  CHECK(trace_identity_check(fields::skew_shear(), u, pts) == doctest::Approx(1.0));
  CHECK(trace_identity_check(fields::identity(2), u, pts) <= 1e-15);
}
