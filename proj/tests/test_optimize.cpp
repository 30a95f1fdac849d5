#include <doctest.h>

#include <cmath>

#include "gqc/optimize.hpp"

using namespace gqc;

TEST_SUITE("optimize") {

TEST_CASE("nelder-mead on smooth functions") {
  const auto quad = [](const std::vector<double>& x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] + 2.0) * (x[1] + 2.0);
  };
  const NelderMeadResult q = nelder_mead(quad, {0.0, 0.0});
  CHECK(q.converged);
  CHECK(q.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(q.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(q.fmin < 1e-10);

  const auto rosenbrock = [](const std::vector<double>& x) {
    const double u = 1.0 - x[0];
    const double v = x[1] - x[0] * x[0];
    return u * u + 100.0 * v * v;
  };
  NelderMeadOptions opts;
  opts.max_evals = 6000;
  const NelderMeadResult r = nelder_mead(rosenbrock, {-1.0, 1.0}, opts);
  CHECK(r.fmin < 1e-8);
}

TEST_CASE("golden section") {
  const double x = golden_section_min([](double t) { return (t - 2.0) * (t - 2.0); }, -5.0, 9.0);
  CHECK(x == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("bisection root") {
  const double r = bisect_root([](double t) { return t * t * t - 8.0; }, 0.0, 5.0);
  CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS(bisect_root([](double t) { return t * t + 1.0; }, -1.0, 1.0));
}

}  // TEST_SUITE
