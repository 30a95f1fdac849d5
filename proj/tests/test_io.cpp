#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "gqc/io.hpp"
#include "gqc/sampling.hpp"

using namespace gqc;

TEST_SUITE("io") {

TEST_CASE("shortest round-trip doubles") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("json round trip is bit-exact") {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const CovarianceMatrix cm = random_physical_cm(1 + k % 3, rng);
    const auto j = cm_to_json(cm);
    const CovarianceMatrix back = cm_from_json(nlohmann::json::parse(j.dump()));
    CHECK((back.matrix() - cm.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }

  // flat row-major arrays are accepted on read
  const auto flat = nlohmann::json::parse(
      R"({"n_modes": 1, "entries": [2.0, 0.0, 0.0, 2.0]})");
  CHECK(cm_from_json(flat).matrix()(1, 1) == 2.0);

  CHECK_THROWS(cm_from_json(nlohmann::json::parse(R"({"entries": []})")));
}

TEST_CASE("csv round trip is bit-exact") {
  Rng rng(2);
  const CovarianceMatrix cm = random_physical_cm(2, rng);
  std::ostringstream out;
  cm_to_csv(cm, out);
  std::istringstream in(out.str());
  const CovarianceMatrix back = cm_from_csv(in);
  CHECK((back.matrix() - cm.matrix()).cwiseAbs().maxCoeff() == 0.0);

  std::istringstream bad("1.0,2.0\n");
  CHECK_THROWS(cm_from_csv(bad));
}

}  // TEST_SUITE
