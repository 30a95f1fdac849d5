#include <doctest.h>

#include <cmath>

#include "gqc/entanglement.hpp"
#include "gqc/families.hpp"
#include "gqc/sampling.hpp"
#include "test_helpers.hpp"

using namespace gqc;

TEST_SUITE("entanglement") {

TEST_CASE("ppt criterion") {
  const PptResult prod = ppt_test(product_thermal(2.0, 3.0));
  CHECK_FALSE(prod.entangled);
  CHECK(prod.nu_tilde_minus == doctest::Approx(2.0).epsilon(1e-12));  // min(sqrt A, sqrt B)

  CHECK(ppt_test(two_mode_squeezed(0.3)).entangled);

  for (double a : {1.5, 2.0, 4.0, 8.0}) {
    for (double b : {1.2, 2.0, 3.5}) {
      const PptResult res = ppt_test(separable_extremal(a, b));
      CHECK(res.nu_tilde_minus >= 1.0 - 1e-9);
      CHECK_FALSE(res.entangled);
    }
  }
}

TEST_CASE("pure-state entanglement entropy") {
  CHECK(geof_pure(CovarianceMatrix::vacuum(2)) == doctest::Approx(0.0));
  for (double s : {0.2, 0.8}) {
    CHECK(geof_pure(two_mode_squeezed(s)) ==
          doctest::Approx(entropy_f(std::cosh(2 * s))).epsilon(1e-12));
  }
  Rng rng(40);
  const CovarianceMatrix moved =
      apply_symplectic(two_mode_squeezed(0.6), test::random_local_pair(rng));
  CHECK(geof_pure(moved) == doctest::Approx(entropy_f(std::cosh(1.2))).epsilon(1e-10));

  CHECK_THROWS(geof_pure(product_thermal(2.0, 1.0)));
}

TEST_CASE("two-mode numeric EoF: pure and separable anchors") {
  for (double s : {0.3, 0.8}) {
    const GeofResult res = geof_two_mode_numeric(two_mode_squeezed(s));
    CHECK(res.value == doctest::Approx(entropy_f(std::cosh(2 * s))).epsilon(1e-6));
    CHECK(res.bracket_consistent);
  }

  Rng rng(91);
  SamplerConfig cfg;
  cfg.seed = 7;
  cfg.filter = StateClass::separable;
  StateSampler sampler(cfg);
  for (int k = 0; k < 10; ++k) {
    const GeofResult res = geof_two_mode_numeric(sampler.sample().to_cm());
    CHECK(res.value <= 1e-8);
  }

  // conjugation by locals leaves the value unchanged
  const CovarianceMatrix base = squeezed_thermal(0.4, 0.7);
  const double ref = geof_two_mode_numeric(base).value;
  const CovarianceMatrix moved = apply_symplectic(base, test::random_local_pair(rng));
  CHECK(geof_two_mode_numeric(moved).value == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("nu_- = 1 states: numeric EoF agrees with the duality value") {
  // purify the eq5 state with one ancilla, then the EoF of the complementary
  // (A, ancilla) pair must equal f(sqrt(Emin)) of the original pair
  for (double a : {1.6, 2.0, 3.0}) {
    for (double b : {1.3, 1.9}) {
      const CovarianceMatrix state = family_eq5(a, b);
      const CovarianceMatrix pure = purify(state);
      REQUIRE(pure.modes() == 3);
      const CovarianceMatrix pair = partial_trace(pure, {0, 2});
      const double duality_value =
          entropy_f(std::sqrt(emin_closed(invariants(state)).value));
      const GeofResult numeric = geof_two_mode_numeric(pair);
      CHECK(numeric.value == doctest::Approx(duality_value).epsilon(1e-5));
    }
  }
}

TEST_CASE("three-mode duality: uncorrelated mode and spectrum guard") {
  // vacuum (x) pure pair: zero entanglement across A x (ST)
  const CovarianceMatrix triv =
      direct_sum(CovarianceMatrix::vacuum(1), two_mode_squeezed(0.7));
  const GeofResult res = geof_three_mode_duality(triv);
  CHECK(res.value == doctest::Approx(0.0).epsilon(1e-10));

  // wrong spectrum is rejected with the offending eigenvalue named
  Rng rng(17);
  const CovarianceMatrix mixed = random_physical_cm(3, rng, 3.0);
  CHECK_THROWS_WITH_AS(geof_three_mode_duality(mixed),
                       doctest::Contains("eigenvalue"), std::invalid_argument);
}

TEST_CASE("three-mode duality on eavesdropping reductions") {
  // appendix-C states: E_G(A|ST) = f(t + s(1-t)), binding to the Sally-Tom
  // parameter rather than Eve's
  for (double s : {1.5, 3.0}) {
    for (double n : {1.5, 3.0}) {
      for (double t : {0.25, 0.5, 0.75}) {
        const ScenarioResult sc = eavesdrop_scenario(s, n, t);
        const double expect_s = entropy_f(t + s * (1.0 - t));
        const double expect_n = entropy_f(t + n * (1.0 - t));
        CHECK(sc.geof_a_st == doctest::Approx(expect_s).epsilon(1e-8));
        if (std::abs(s - n) > 0.1) {
          CHECK(std::abs(sc.geof_a_st - expect_n) > 1e-3);
        }
      }
    }
  }
}

TEST_CASE("duality identity on random four-mode pure states") {
  Rng rng(62);
  for (int k = 0; k < 30; ++k) {
    const CovarianceMatrix pure4 = random_pure_cm(4, rng, 0.8);
    const CovarianceMatrix sigma_ab = partial_trace(pure4, {0, 1});
    const CovarianceMatrix sigma_ast = partial_trace(pure4, {0, 2, 3});
    const double j_left = classical_correlations(sigma_ab, Direction::left);
    const double e_g = geof_three_mode_duality(sigma_ast).value;
    const double s_a = entropy_f(std::sqrt(sigma_ab.block(0, 0).determinant()));
    CHECK(j_left + e_g == doctest::Approx(s_a).epsilon(1e-8));
  }
}

TEST_CASE("discord bounds from the Gaussian EoF") {
  CHECK_THROWS_AS(discord_bounds_given_geof(0.0), std::invalid_argument);
  CHECK_THROWS_AS(discord_bounds_given_geof(-1.0), std::invalid_argument);

  // high-entanglement regime: bounds approach (E_G - 1, E_G)
  const DiscordBounds high = discord_bounds_given_geof(20.0);
  CHECK(high.upper == doctest::Approx(20.0));
  CHECK(high.lower == doctest::Approx(19.0).epsilon(1e-2));

  // the two upper-bound expressions cross at E_G = 2 ln 2 (r = arcsinh 1)
  const double cross = 2.0 * std::log(2.0);
  const DiscordBounds at_cross = discord_bounds_given_geof(cross);
  CHECK(at_cross.r == doctest::Approx(std::asinh(1.0)).epsilon(1e-10));
  const double ln_coth = 2.0 * std::atanh(std::exp(-2.0 * at_cross.r));
  CHECK((1.0 + std::cosh(2.0 * at_cross.r)) * ln_coth == doctest::Approx(cross).epsilon(1e-10));

  // lower < upper over a log sweep
  for (double lg = -3.0; lg <= std::log10(30.0); lg += 0.1) {
    const DiscordBounds b = discord_bounds_given_geof(std::pow(10.0, lg));
    CHECK(b.lower < b.upper);
  }
}

TEST_CASE("ppt consistency of the numeric EoF") {
  // uniform-box draws are mostly separable, so entangled draws are added
  // through the class filter to exercise both sides of the equivalence
  SamplerConfig cfg;
  cfg.seed = 140;
  StateSampler any_sampler(cfg);
  cfg.filter = StateClass::entangled;
  StateSampler ent_sampler(cfg);

  int entangled_seen = 0, separable_seen = 0, inversions = 0;
  for (int k = 0; k < 1000; ++k) {
    const TwoModeStandardForm sf = (k % 3 == 0) ? ent_sampler.sample() : any_sampler.sample();
    const CovarianceMatrix cm = sf.to_cm();
    const PptResult ppt = ppt_test(cm);
    const GeofResult geof = geof_two_mode_numeric(cm);
    if (!geof.bracket_consistent) ++inversions;
    if (ppt.entangled) {
      ++entangled_seen;
      CHECK(geof.value > 1e-6);
    } else {
      ++separable_seen;
      CHECK(geof.value <= 1e-6);
    }
  }
  CHECK(entangled_seen > 300);
  CHECK(separable_seen > 300);
  CHECK(inversions == 0);  // bisection bracket never inverted
}

TEST_CASE("sandwich bounds on entangled states") {
  SamplerConfig cfg;
  cfg.seed = 3141;
  cfg.filter = StateClass::entangled;
  StateSampler sampler(cfg);
  for (int k = 0; k < 100; ++k) {
    const TwoModeStandardForm sf = sampler.sample();
    const CovarianceMatrix cm = sf.to_cm();
    const double d_left = discord(cm, Direction::left);
    const GeofResult geof = geof_two_mode_numeric(cm);
    const DiscordBounds bounds = discord_bounds_given_geof(std::max(geof.value, 1e-12));
    CHECK(d_left >= bounds.lower - 1e-6);
    CHECK(d_left <= bounds.upper + 1e-6);
  }
}

}  // TEST_SUITE
