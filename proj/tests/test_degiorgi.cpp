#include "gsbdlab/degiorgi.hpp"

#include <doctest.h>

#include <cmath>

using namespace gsbdlab;

namespace {

const QuadratureSpec kQuad{};
const auto kAbs = [](const VecRef&, const VecRef& xi) { return xi.norm(); };

// Midpoint-rule oracle for a = -int f alpha_{j,q}' on the support, independent of the library's Gauss rules.
double slope_oracle_1d(const std::function<double(double)>& f, int j, double q, int n = 200000) {
  const double lo = q - 1.0 / j, hi = q + 1.0 / j, h = (hi - lo) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = lo + (i + 0.5) * h;
    const double z = j * (q - xi);
    const double dalpha = (15.0 / 16) * 2 * (1 - z * z) * (-2 * z) * (-j) * j;  // d/dxi of j alpha(j (q - xi))
    s += f(xi) * dalpha;
  }
  return -s * h;
}

}  // namespace

TEST_CASE("mollifier has unit mass") {
  CHECK(std::abs(MollifierAlpha::canonical(1).mass(kQuad) - 1.0) <= 1e-12);
  CHECK(std::abs(MollifierAlpha::canonical(2).mass(kQuad) - 1.0) <= 1e-12);
  CHECK(MollifierAlpha::canonical(1)(vec1(1.5)) == 0.0);
}

TEST_CASE("affine coefficients for |xi|") {
  const auto alpha = MollifierAlpha::canonical(1);
  const Vec x = vec1(0.0);
  const auto c1 = affine_coeffs(kAbs, alpha, 4, vec1(0.5), x, kQuad);
  CHECK(std::abs(c1.a(0) - 1.0) <= 1e-10);
  CHECK(std::abs(c1.a0) <= 1e-8);
  const auto c2 = affine_coeffs(kAbs, alpha, 4, vec1(-0.5), x, kQuad);
  CHECK(std::abs(c2.a(0) + 1.0) <= 1e-10);
  CHECK(std::abs(c2.a0) <= 1e-8);
  for (int j : {1, 3, 16}) CHECK(std::abs(affine_coeffs(kAbs, alpha, j, vec1(0.0), x, kQuad).a(0)) <= 1e-12);
}

TEST_CASE("affine coefficients match a midpoint oracle across the kink") {
  const auto alpha = MollifierAlpha::canonical(1);
  for (double q : {0.1, -0.2, 0.05})
    for (int j : {2, 5}) {
      const double lib = affine_coeffs(kAbs, alpha, j, vec1(q), vec1(0.0), kQuad).a(0);
      CHECK(lib == doctest::Approx(slope_oracle_1d([](double s) { return std::abs(s); }, j, q)).epsilon(1e-8));
    }
}

TEST_CASE("sup_reconstruct examples") {
  const auto alpha = MollifierAlpha::canonical(1);
  const std::vector<DeGiorgiIndex> two{{4, vec1(-0.5)}, {4, vec1(0.5)}};
  CHECK(sup_reconstruct(kAbs, alpha, two, vec1(0.0), vec1(-0.7), kQuad, true) == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(sup_reconstruct(kAbs, alpha, two, vec1(0.0), vec1(0.0), kQuad, true) == 0.0);

  // xi^2 against the tangent-line envelope oracle
  const ConvexIntegrand sq = [](const VecRef&, const VecRef& xi) { return xi.squaredNorm(); };
  const auto dense = index_lattice(1, 32, 1.0 / 8, 2.0);
  const double v = sup_reconstruct(sq, alpha, dense, vec1(0.0), vec1(1.0), kQuad, false);
  CHECK(v >= 1.0 - 0.02);
  CHECK(v <= 1.0 + 1e-8);
}

TEST_CASE("reconstruction of |xi| from below within 1e-2 on the default lattice") {
  const auto alpha = MollifierAlpha::canonical(1);
  const DeGiorgiEnvelope env(kAbs, alpha, index_lattice(1), vec1(0.3), kQuad, true);
  double gap = 0.0, over = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double xi = -2.0 + 4.0 * i / 99;
    gap = std::max(gap, std::abs(xi) - env(vec1(xi)));
    over = std::max(over, env(vec1(xi)) - std::abs(xi));
  }
  CHECK(gap <= 1e-2);
  CHECK(over <= 1e-8);
}

TEST_CASE("enlarging the index set never lowers the envelope") {
  const auto alpha = MollifierAlpha::canonical(1);
  const ConvexIntegrand f = [](const VecRef& x, const VecRef& xi) { return (1 + x.squaredNorm()) * xi.norm(); };
  const auto small = index_lattice(1, 8, 0.25, 1.0);
  const auto big = index_lattice(1, 16, 0.125, 2.0);
  const DeGiorgiEnvelope es(f, alpha, small, vec1(0.6), kQuad, true);
  const DeGiorgiEnvelope eb(f, alpha, big, vec1(0.6), kQuad, true);
  for (int i = 0; i < 41; ++i) {
    const Vec xi = vec1(-2.0 + 0.1 * i);
    CHECK(eb(xi) >= es(xi) - 1e-14);
  }
}

TEST_CASE("gap at least halves per lattice refinement until round-off") {
  const auto alpha = MollifierAlpha::canonical(1);
  double prev = INFINITY;
  for (int k = 1; k <= 6; ++k) {
    const DeGiorgiEnvelope env(kAbs, alpha, index_lattice(1, 1 << k, std::ldexp(1.0, -k), 2.0), vec1(0.0), kQuad,
                               true);
    double gap = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double xi = -2.0 + 4.0 * i / 99;
      gap = std::max(gap, std::abs(xi) - env(vec1(xi)));
    }
    if (prev > 1e-8) CHECK(gap <= 0.5 * prev + 1e-12);
    prev = gap;
  }
}

TEST_CASE("coefficients inherit continuity in x") {
  const auto alpha = MollifierAlpha::canonical(1);
  const ConvexIntegrand f = [](const VecRef& x, const VecRef& xi) { return (1 + x.squaredNorm()) * xi.norm(); };
  double prev = affine_coeffs(f, alpha, 4, vec1(0.5), vec1(0.0), kQuad).a(0);
  for (int i = 1; i <= 20; ++i) {
    const double x = 0.05 * i;
    const double a = affine_coeffs(f, alpha, 4, vec1(0.5), vec1(x), kQuad).a(0);
    // |a(x) - a(x')| <= |(1 + x^2) - (1 + x'^2)| sup |a / (1 + x^2)|, with that ratio equal to 1 here
    CHECK(std::abs(a - prev) <= std::abs(x * x - (x - 0.05) * (x - 0.05)) + 1e-10);
    prev = a;
  }
}

TEST_CASE("support set membership") {
  const SupportFunction abs1 = [](const VecRef& xi) { return std::abs(xi(0)); };
  const auto dirs1 = rational_directions(1);
  const auto r = support_set_check(abs1, {vec1(1.0), vec1(1.2)}, dirs1);
  CHECK(r[0].member);
  CHECK_FALSE(r[1].member);
  CHECK(r[1].witness(0) == 1.0);

  const SupportFunction box = [](const VecRef& xi) { return 2 * std::abs(xi(0)) + std::abs(xi(1)); };
  const auto r2 = support_set_check(box, {vec2(2.0, 0.0), vec2(2.1, 0.0), vec2(0.0, 1.01)}, rational_directions(2, 5));
  CHECK(r2[0].member);
  CHECK_FALSE(r2[1].member);
  CHECK_FALSE(r2[2].member);
}

TEST_CASE("selection sets") {
  const SupportFunction abs1 = [](const VecRef& xi) { return std::abs(xi(0)); };
  const auto member = support_membership(abs1, rational_directions(1));
  auto sel = selection_set({vec1(0.0)}, {0.25, 0.5}, {vec1(1.0), vec1(-1.0)}, member);
  std::vector<double> vals;
  for (const auto& b : sel) vals.push_back(b(0));
  std::sort(vals.begin(), vals.end());
  CHECK(vals == std::vector<double>{-0.5, -0.25, 0.25, 0.5});

  // Outward perturbations of a boundary point are all rejected.
  CHECK_THROWS_AS(selection_set({vec1(1.0)}, {0.25, 0.5}, {vec1(1.0)}, member), Error);

  const SupportFunction disk = [](const VecRef& xi) { return xi.norm(); };
  const auto s2 = selection_set({vec2(0, 0)}, {0.5}, {vec2(1, 0)}, support_membership(disk, rational_directions(2)));
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].isApprox(vec2(0.5, 0.0)));
}

TEST_CASE("rational directions are unit vectors") {
  for (const auto& v : rational_directions(2, 4)) CHECK(std::abs(v.norm() - 1.0) <= 1e-15);
}
