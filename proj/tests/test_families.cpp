#include <doctest.h>

#include <cmath>

#include "gqc/discord.hpp"
#include "gqc/families.hpp"
#include "gqc/symplectic.hpp"
#include "test_helpers.hpp"

using namespace gqc;

TEST_SUITE("families") {

TEST_CASE("two-mode squeezed and squeezed thermal") {
  for (double s : {0.0, 0.4, 1.1}) {
    CHECK(test::max_abs_diff(squeezed_thermal(0.0, s).matrix(),
                             two_mode_squeezed(s).matrix()) == 0.0);
    const SymplecticInvariants inv = invariants(two_mode_squeezed(s));
    CHECK(inv.nu_minus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(inv.nu_plus == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(is_physical(squeezed_thermal(1.5, 0.8)));
  CHECK_THROWS(squeezed_thermal(-0.1, 0.5));
}

TEST_CASE("eq5 family: vacuum normal mode across the parameter domain") {
  for (double a : {1.0, 1.5, 2.0, 4.0}) {
    for (double frac : {0.0, 0.4, 1.0}) {
      const double b = 1.0 + frac * (2.0 * a - 2.0);  // up to the b = 2a - 1 edge
      const CovarianceMatrix cm = family_eq5(a, b);
      CHECK(is_physical(cm));
      CHECK(invariants(cm).nu_minus == doctest::Approx(1.0).epsilon(1e-9));
      const SymplecticInvariants inv = invariants(cm);
      CHECK(inv.A == doctest::Approx(a * a).epsilon(1e-12));
      CHECK(inv.B == doctest::Approx(b * b).epsilon(1e-12));
      CHECK(inv.C == doctest::Approx((1.0 - b * b) / 2.0).epsilon(1e-9));
      CHECK(inv.D == doctest::Approx(a * a).epsilon(1e-9));
    }
  }
  CHECK_THROWS_WITH_AS(family_eq5(2.0, 3.5), doctest::Contains("2a - 1"), std::invalid_argument);
  CHECK_THROWS_AS(family_eq5(2.0, 0.5), std::invalid_argument);
}

TEST_CASE("separable extremal family") {
  const CovarianceMatrix cm = separable_extremal(3.0, 2.0);
  const TwoModeStandardForm sf = standard_form(cm);
  // correlation-block determinant sits at the separability boundary
  CHECK(sf.c * sf.d == doctest::Approx(1.0 + 3.0 * 2.0 - 3.0 - 2.0).epsilon(1e-12));
  CHECK(sf.c == doctest::Approx(sf.d).epsilon(1e-12));
  CHECK(is_physical(cm));
  CHECK(invariants(cm).nu_tilde_minus >= 1.0 - 1e-9);

  // discord attains the two-marginal bound exactly on this family and stays
  // below the single-marginal bound
  const double d_left = discord(cm, Direction::left);
  const double inter = entropy_f(2.0) - entropy_f(4.0) + entropy_f(7.0 / 3.0);
  CHECK(d_left == doctest::Approx(inter).epsilon(1e-10));
  CHECK(d_left <= 0.5 * std::log(3.0) + 1e-12);

  CHECK_THROWS(separable_extremal(0.5, 2.0));
}

TEST_CASE("product thermal") {
  const CovarianceMatrix cm = product_thermal(1.0, 4.0);
  CHECK(is_physical(cm));
  CHECK(is_zero_discord(cm, 1e-12));
  CHECK_THROWS(product_thermal(0.9, 1.0));
}

TEST_CASE("eq6 asymptotics at finite scale") {
  double prev_left = 1e300, prev_right = -1.0;
  for (double rs : {2.0, 4.0, 8.0}) {
    const CovarianceMatrix cm = squeezed_thermal(rs, rs);
    const double dl = discord(cm, Direction::left);
    const double dr = discord(cm, Direction::right);
    CHECK(dl < prev_left);   // decreasing toward 0
    CHECK(dr > prev_right);  // increasing toward 1
    prev_left = dl;
    prev_right = dr;
  }
  CHECK(prev_left < 1e-3);
  CHECK(std::abs(prev_right - 1.0) < 1e-3);
}

TEST_CASE("eq6 family approaches asymmetry-bound equality") {
  for (double r : {0.5, 1.0, 2.0}) {
    const CovarianceMatrix cm = squeezed_thermal(r, 8.0);
    const double dl = discord(cm, Direction::left);
    const double dr = discord(cm, Direction::right);
    const double d_min = std::min(dl, dr);
    const double bound = d_min / std::expm1(d_min);
    CHECK(bound - (std::max(dl, dr) - d_min) < 1e-2);
    CHECK(bound - (std::max(dl, dr) - d_min) > -1e-9);
  }
}

TEST_CASE("eavesdrop scenario structure") {
  const ScenarioResult sc = eavesdrop_scenario(2.0, 1.5, 0.4);

  // global state is pure, reductions agree with partial_trace
  const CovarianceMatrix abst(sc.sigma_abst);
  for (double nu : symplectic_eigenvalues(abst)) CHECK(std::abs(nu - 1.0) < 1e-8);
  CHECK(test::max_abs_diff(sc.sigma_ast, partial_trace(abst, {0, 2, 3}).matrix()) == 0.0);
  CHECK(test::max_abs_diff(sc.sigma_ab, partial_trace(abst, {0, 1}).matrix()) == 0.0);

  // sigma_AST carries spectrum {1, 1, n}
  const auto nus = symplectic_eigenvalues(CovarianceMatrix(sc.sigma_ast));
  CHECK(nus[0] == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(nus[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(nus[2] == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS(eavesdrop_scenario(0.5, 2.0, 0.5));
  CHECK_THROWS(eavesdrop_scenario(2.0, 2.0, 1.5));
}

TEST_CASE("eavesdrop edge cases") {
  // t = 1: no interaction, Eve's probe stays uncorrelated with (S, T)
  const ScenarioResult passive = eavesdrop_scenario(2.5, 1.8, 1.0);
  CHECK(passive.geof_a_st == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(entropy_f(1.0 + 2.5 * 0.0) == 0.0);  // f[t + a(1-t)] with t = 1

  // both inputs vacuum: no correlations anywhere
  const ScenarioResult vac = eavesdrop_scenario(1.0, 1.0, 0.6);
  CHECK(vac.geof_a_st == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(vac.discord_ab_left) < 1e-9);
  CHECK(test::max_abs_diff(vac.sigma_abst, Matrix::Identity(8, 8)) < 1e-12);

  // t = 0 swaps Eve's probe with Sally's mode
  const ScenarioResult swap = eavesdrop_scenario(3.0, 2.0, 0.0);
  CHECK(swap.geof_a_st == doctest::Approx(entropy_f(3.0)).epsilon(1e-8));
  CHECK(is_physical(CovarianceMatrix(swap.sigma_ast)));
}

}  // TEST_SUITE
