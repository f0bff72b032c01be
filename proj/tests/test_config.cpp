#include <doctest.h>

#include "splitrisk/config.hpp"
#include "splitrisk/csv.hpp"
#include "splitrisk/errors.hpp"
#include "splitrisk/manifest.hpp"

using namespace splitrisk;

TEST_CASE("key-value config parsing") {
  const auto kv = KeyValueFile::parse_text(
      "# comment\n"
      "distribution = beta(2,10)\n"
      "estimators = B, X_SCALE\n"
      "n = 10, 20\n"
      "p = 0.05:0.95:0.05\n"
      "replicates = 5000\n"
      "seed = 42\n");
  const auto spec = simulation_from_config(kv);
  CHECK(spec.config.distribution == Dist::beta(2, 10));
  CHECK(spec.config.kinds ==
        std::vector<Estimator>{Estimator::B, Estimator::XScale});
  CHECK(spec.config.n_list == std::vector<long>{10, 20});
  CHECK(spec.config.p_grid.size() == 19);
  CHECK(spec.config.p_grid.front() == doctest::Approx(0.05));
  CHECK(spec.config.p_grid.back() == doctest::Approx(0.95));
  CHECK(spec.config.replicates == 5000);
  CHECK(spec.config.seed == 42);
}

TEST_CASE("unknown and malformed keys are rejected with the key path") {
  CHECK_THROWS_WITH_AS(KeyValueFile::parse_text("repliactes = 10\n"),
                       doctest::Contains("repliactes"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse_text("seed 42\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse_text("seed =\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueFile::parse_text("seed = 1\nseed = 2\n"), ConfigError);
  CHECK_THROWS_AS(
      simulation_from_config(KeyValueFile::parse_text("distribution = gamma(1)\n")),
      ConfigError);
  CHECK_THROWS_AS(simulation_from_config(KeyValueFile::parse_text(
                      "unlabeled = 5\nunlabeled_ratio = 2\n")),
                  ConfigError);
}

TEST_CASE("numeric list parsing") {
  CHECK(parse_double_list("0.1,0.2") == std::vector<double>{0.1, 0.2});
  const auto grid = parse_double_list("0.25:0.75:0.25");
  REQUIRE(grid.size() == 3);
  CHECK(grid[1] == doctest::Approx(0.5));
  CHECK(parse_long_list("2,10,100") == std::vector<long>{2, 10, 100});
  CHECK_THROWS_AS(parse_double_list(""), ConfigError);
  CHECK_THROWS_AS(parse_double_list("a,b"), ConfigError);
  CHECK_THROWS_AS(parse_double_list("0.1:0.9"), ConfigError);
}

TEST_CASE("doubles render in shortest round-trip form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.04541015625) == "0.04541015625");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  // round trip
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("manifest serializes and hashes outputs") {
  RunManifest m;
  m.subcommand = "risk";
  m.config = {{"kind", "B"}};
  m.seed = 7;
  m.mark_started();
  m.mark_finished();
  const std::string json = m.to_json();
  CHECK(json.find("\"subcommand\": \"risk\"") != std::string::npos);
  CHECK(json.find("\"seed\": 7") != std::string::npos);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") != fnv1a64("b"));
}
