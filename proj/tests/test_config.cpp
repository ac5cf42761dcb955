#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cgolab/config.hpp"
#include "cgolab/errors.hpp"

using namespace cgolab;

TEST_CASE("defaults match configs/default.jsonc") {
  std::ifstream f(CGOLAB_SOURCE_DIR "/configs/default.jsonc");
  REQUIRE(f);
  std::ostringstream text;
  text << f.rdbuf();
  const auto j = nlohmann::json::parse(text.str(), nullptr, true, true);
  CHECK(j == default_config_tree());
  const Config c;
  CHECK(c.seed() == j.at("seed").get<std::uint64_t>());
  CHECK(c.jobs() == 1);
}

TEST_CASE("jsonc overrides merge over the defaults") {
  const Config c = Config::parse(R"(
    // comments are allowed
    {
      "seed": 11, /* inline too */
      "cgo": { "taus": [5, 10] },
      "dtn": { "resolutions": [[16, 32], 24] }
    })");
  CHECK(c.seed() == 11);
  CHECK(c.numbers("cgo", "taus") == std::vector<double>{5.0, 10.0});
  CHECK(c.number("cgo", "coefficient_sup") == Config().number("cgo", "coefficient_sup"));
  const auto res = c.resolutions("dtn", "resolutions");
  REQUIRE(res.size() == 2);
  CHECK(res[0] == std::pair{16, 32});
  CHECK(res[1] == std::pair{24, 24});
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_AS(Config::parse("{ \"seed\": 1,"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"sed": 1})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"gauge": {"amplitud": 0.1}})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"gauge": {"amplitude": "big"}})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"gauge": 3})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"schema_version": 2})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"seed": -4})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"jobs": 0})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"cgo": {"taus": [10, 5]}})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"cgo": {"taus": []}})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"cgo": {"n_r": 2.5}})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"dtn": {"resolutions": [[2, 4]]}})"), ConfigError);
  CHECK_THROWS_AS(Config::parse(R"({"dtn": {"resolutions": [[16, 32, 8]]}})"), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/cgolab.jsonc"), ConfigError);
}

TEST_CASE("seed and jobs overrides") {
  Config c;
  c.set_seed(99);
  CHECK(c.seed() == 99);
  c.set_jobs(4);
  CHECK(c.jobs() == 4);
  CHECK_THROWS_AS(c.set_jobs(0), ConfigError);
  CHECK_THROWS_AS(c.set_jobs(65), ConfigError);
}
