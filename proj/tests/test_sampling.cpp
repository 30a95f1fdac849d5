#include <doctest.h>

#include <sstream>

#include "gqc/sampling.hpp"
#include "gqc/symplectic.hpp"
#include "gqc/verify.hpp"

using namespace gqc;

TEST_SUITE("sampling") {

TEST_CASE("fixed seed gives an identical sequence") {
  SamplerConfig cfg;
  cfg.seed = 424242;
  StateSampler s1(cfg), s2(cfg);
  for (int k = 0; k < 100; ++k) {
    const TwoModeStandardForm a = s1.sample();
    const TwoModeStandardForm b = s2.sample();
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    CHECK(a.c == b.c);
    CHECK(a.d == b.d);
  }
  CHECK(s1.rejections() == s2.rejections());
}

TEST_CASE("class filters") {
  SamplerConfig cfg;
  cfg.seed = 5;
  cfg.filter = StateClass::product;
  StateSampler prod(cfg);
  for (int k = 0; k < 50; ++k) {
    const TwoModeStandardForm sf = prod.sample();
    CHECK(sf.c == 0.0);
    CHECK(sf.d == 0.0);
    CHECK(sf.a >= 1.0);
  }

  cfg.filter = StateClass::separable;
  StateSampler sep(cfg);
  for (int k = 0; k < 10000; ++k) {
    const SymplecticInvariants inv = invariants(sep.sample());
    CHECK(inv.nu_minus >= 1.0 - 1e-12);
    CHECK(inv.nu_tilde_minus >= 1.0 - 1e-9);
  }

  cfg.filter = StateClass::entangled;
  StateSampler ent(cfg);
  for (int k = 0; k < 2000; ++k) {
    const SymplecticInvariants inv = invariants(ent.sample());
    CHECK(inv.nu_minus >= 1.0 - 1e-12);
    CHECK(inv.nu_tilde_minus < 1.0 - 1e-9);
  }

  // standard-form normalization holds on every draw
  cfg.filter = StateClass::any;
  StateSampler any(cfg);
  for (int k = 0; k < 2000; ++k) {
    const TwoModeStandardForm sf = any.sample();
    CHECK(sf.c >= std::abs(sf.d));
    if (sf.d != 0.0) CHECK((sf.d > 0.0) == (sf.c * sf.d > 0.0));
  }
}

TEST_CASE("rejection stall is reported") {
  SamplerConfig cfg;
  cfg.seed = 9;
  cfg.a_max = 1.0 + 1e-9;  // no room for correlations
  cfg.b_max = 1.0 + 1e-9;
  cfg.filter = StateClass::entangled;
  StateSampler stall(cfg);
  CHECK_THROWS_WITH_AS(stall.sample(), doctest::Contains("stall"), std::runtime_error);
}

TEST_CASE("substreams are independent of chunk layout") {
  Rng a = Rng::substream(1000, 3);
  Rng b = Rng::substream(1000, 3);
  Rng c = Rng::substream(1000, 4);
  const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
  CHECK(va == vb);
  CHECK(va != vc);
}

TEST_CASE("verification suites pass at small sample counts") {
  VerifyConfig cfg;
  cfg.seed = 77;

  const BoundReport asym = verify_asymmetry(500, cfg);
  CHECK(asym.passed());
  CHECK(asym.n_samples >= 500);
  CHECK(asym.counts.at("injected_eq6") == 4);
  CHECK(asym.histogram.size() == 32);

  const BoundReport sep = verify_separable_bound(500, cfg);
  CHECK(sep.passed());
  CHECK(sep.counts.at("injected_extremal") == 12);

  const BoundReport oracle = verify_oracle(500, cfg);
  CHECK(oracle.passed());
  CHECK(oracle.counts.at("branch_general") > 25);
  CHECK(oracle.counts.at("branch_homodyne") > 25);

  const BoundReport ent = verify_entangled_bounds(40, cfg);
  CHECK(ent.passed());
  CHECK(ent.n_samples == 40);
}

TEST_CASE("figure data: headers, bounds, determinism across thread counts") {
  VerifyConfig one_thread;
  one_thread.seed = 31;
  one_thread.threads = 1;
  VerifyConfig two_threads = one_thread;
  two_threads.threads = 2;

  std::ostringstream empty;
  figure_data(FigurePanel::left, 0, empty, one_thread);
  CHECK(empty.str() == "marginal_entropy,discord_left,bound\n");

  std::ostringstream a, b;
  figure_data(FigurePanel::left, 200, a, one_thread);
  figure_data(FigurePanel::left, 200, b, two_threads);
  CHECK(a.str() == b.str());  // byte-identical regardless of thread count

  std::istringstream rows(a.str());
  std::string line;
  std::getline(rows, line);
  int count = 0;
  while (std::getline(rows, line)) {
    double ent_b, disc, bound;
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf", &ent_b, &disc, &bound) == 3);
    CHECK(disc <= bound + 1e-5);
    CHECK(disc <= 1.0 + 1e-5);
    ++count;
  }
  CHECK(count == 200);

  std::ostringstream right1, right2;
  figure_data(FigurePanel::right, 12, right1, one_thread);
  figure_data(FigurePanel::right, 12, right2, two_threads);
  CHECK(right1.str() == right2.str());
  std::istringstream rrows(right1.str());
  std::getline(rrows, line);
  CHECK(line == "geof,discord_left,lower,upper");
  while (std::getline(rrows, line)) {
    double eg, disc, lo, hi;
    CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &eg, &disc, &lo, &hi) == 4);
    CHECK(disc >= lo - 1e-5);
    CHECK(disc <= hi + 1e-5);
  }
}

}  // TEST_SUITE
