#include "gsbdlab/energy.hpp"
#include "gsbdlab/griffith.hpp"

#include <doctest.h>

#include <cmath>

using namespace gsbdlab;

namespace {

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

// V = 57 on [-0.1, 0.6] puts levels 0.0125 apart, so the affine pull 0.4 x lands on nodes exactly at N = 32.
TEST_CASE("pull test picks elastic or cracked by comparing delta^2 with kappa0") {
  const auto elastic = minimize_dp(griffith_pull_model(0.4, 0.25, 32, 57));
  CHECK(elastic.jump_nodes.empty());
  CHECK(elastic.ledger.total == doctest::Approx(0.16).epsilon(1e-12));

  const auto cracked = minimize_dp(griffith_pull_model(0.6, 0.25, 32, 57));
  CHECK(cracked.jump_nodes.size() == 1);
  CHECK(cracked.ledger.total == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cracked.ledger.bulk <= 1e-12);

  // Default grid: levels 0.7/63 apart, so the best ramp is a staircase of 28 single and 4 double steps.
  const double d = 0.7 / 63, staircase = 32 * (28 * d * d + 4 * 4 * d * d);
  const double coarse = minimize_dp(griffith_pull_model(0.4, 0.25, 32, 64)).ledger.total;
  CHECK(coarse >= 0.16 - 1e-12);
  CHECK(coarse <= staircase + 1e-12);
}

TEST_CASE("dynamic program matches the exhaustive oracle") {
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const auto m = random_model(seed, 5, 6);
    const auto dp = minimize_dp(m);
    const auto bf = brute_force_oracle(m);
    CHECK_MESSAGE(std::abs(dp.ledger.total - bf.ledger.total) <= 1e-10, "seed " << seed);
  }
  const auto pull = griffith_pull_model(0.6, 0.25, 4, 8);
  const auto dp = minimize_dp(pull);
  const auto bf = brute_force_oracle(pull);
  CHECK(std::abs(dp.ledger.total - bf.ledger.total) <= 1e-12);
  CHECK(bf.jump_nodes.size() == 1);
  CHECK(bf.visited > 0);
}

TEST_CASE("solver ledger agrees with a fresh energy evaluation of the reconstruction") {
  for (std::uint64_t seed : {3u, 11u, 42u}) {
    const auto m = random_model(seed, 16, 12);
    const auto r = minimize_dp(m);
    const auto u = reconstruct(m, r);
    const auto l = eval_energy(m.energy, u, m.quad);
    CHECK(std::abs(l.total - r.ledger.total) <= 1e-10);
    CHECK(std::abs(l.surface - r.ledger.surface) <= 1e-10);

    // Griffith sandwich: the coercivity bound sits below the energy and the compactness quantity is what it says.
    CHECK(r.griffith_bound <= r.ledger.total + 1e-10);
    const double q = griffith_quantity(u, m.energy.p, m.quad) + confinement_integral(m.energy.psi, u, m.quad);
    CHECK(std::abs(q - r.compactness_quantity) <= 1e-10);
  }
}

TEST_CASE("jumps only where traces differ") {
  const auto m = random_model(7, 12, 10);
  const auto r = minimize_dp(m);
  for (int i : r.jump_nodes) CHECK(r.end_index[std::size_t(i - 1)] != r.start_index[std::size_t(i)]);
  for (int i = 1; i < m.N; ++i) {
    const bool listed = std::find(r.jump_nodes.begin(), r.jump_nodes.end(), i) != r.jump_nodes.end();
    if (!listed) CHECK(r.end_index[std::size_t(i - 1)] == r.start_index[std::size_t(i)]);
  }
}

TEST_CASE("forbidden nodes never jump") {
  auto m = griffith_pull_model(0.6, 0.25, 8, 8);
  m.jump_allowed.assign(7, false);
  m.jump_allowed[5] = true;
  const auto r = minimize_dp(m);
  REQUIRE(r.jump_nodes.size() == 1);
  CHECK(r.jump_nodes[0] == 6);
}

TEST_CASE("refinement never raises the energy") {
  const auto rep = refinement_study(griffith_pull_model(0.6, 0.25, 4, 8), 3);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[1].N == 8);
  CHECK(rep.rows[1].V == 15);
  CHECK(rep.non_increasing);
  CHECK(rep.bound_holds);
  for (std::size_t k = 1; k < rep.rows.size(); ++k) CHECK(rep.rows[k].ledger.total <= rep.rows[k - 1].ledger.total + 1e-12);
  for (const auto& row : rep.rows) CHECK(row.bound_2_1 <= rep.M);

  const auto rnd = refinement_study(random_model(5, 4, 5), 3);
  CHECK(rnd.non_increasing);
  CHECK(rnd.bound_holds);
}

TEST_CASE("number of jumps does not grow with toughness") {
  std::size_t prev = 100;
  for (double k0 : {0.01, 0.05, 0.2, 0.3, 0.5, 1.0}) {
    const auto r = minimize_dp(griffith_pull_model(0.6, k0, 16, 29));
    CHECK(r.jump_nodes.size() <= prev);
    prev = r.jump_nodes.size();
  }
  CHECK(prev == 0);
}

TEST_CASE("zero toughness is flagged as degenerate") {
  const auto r = minimize_dp(griffith_pull_model(0.6, 0.0, 8, 8));
  CHECK(r.degenerate_surface);
  CHECK(r.ledger.total <= 1e-12);
}

TEST_CASE("griffith errors") {
  CHECK(error_of([] { brute_force_oracle(random_model(1, 7, 6)); }) == ErrorKind::SearchSpaceTooLarge);
  CHECK(error_of([] { brute_force_oracle(random_model(1, 5, 9)); }) == ErrorKind::SearchSpaceTooLarge);
  auto m = griffith_pull_model(0.6, 0.25, 4, 8);
  m.V = 1;
  CHECK_THROWS_AS(minimize_dp(m), Error);
}
