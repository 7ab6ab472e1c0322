#include <doctest.h>

#include "tmgen/config.hpp"
#include "tmgen/errors.hpp"

using namespace tmgen;

TEST_CASE("empty config resolves to university defaults") {
  const RunConfig config = parse_run_config("{}");
  CHECK(config.topology.num_nodes == 8);
  CHECK(config.topology.num_racks == 4);
  CHECK(config.overall_load_rate == 0.5);
  CHECK(config.resolved_num_flows() == 320);  // 5 * 8^2
  CHECK(config.packer == PackerKind::vectorised);
  CHECK(config.node_dist.interrack_fraction == 0.7);
  CHECK(config.size_dist.family_name() == "lognormal");
  CHECK(config.iat_dist.family_name() == "exponential");
}

TEST_CASE("num_flows auto follows 5 N^2") {
  const RunConfig config =
      parse_run_config(R"({"topology":{"num_nodes":16},"num_flows":"auto"})");
  CHECK(config.resolved_num_flows() == 1280);
}

TEST_CASE("explicit fields override defaults") {
  const RunConfig config = parse_run_config(R"({
    "topology": {"num_nodes": 32, "num_racks": 8, "node_capacity": 2.5},
    "node_dist": {"interrack_fraction": 0.6, "skew_node_fraction": 0.25,
                  "skew_load_fraction": 0.5},
    "size_dist": {"family": "pareto", "shape": 2.0, "scale": 1.0,
                  "min": 1.0, "max": 1000.0},
    "iat_dist": {"family": "weibull", "shape": 0.9, "scale": 1.5,
                 "min": 1e-6, "max": 100.0},
    "overall_load_rate": 0.4,
    "num_flows": 512,
    "seed": 7,
    "packer": "original",
    "shaping": {"jsd_threshold": 0.2, "max_attempts": 5, "num_bins": 40},
    "fixed_point_scale": 1000.0
  })");
  CHECK(config.topology.num_nodes == 32);
  CHECK(config.topology.node_capacity == 2.5);
  CHECK(config.size_dist.family_name() == "pareto");
  CHECK(config.iat_dist.family_name() == "weibull");
  CHECK(config.overall_load_rate == 0.4);
  CHECK(config.resolved_num_flows() == 512);
  CHECK(config.seed == 7);
  CHECK(config.packer == PackerKind::original);
  CHECK(config.shaping.jsd_threshold == 0.2);
  CHECK(config.fixed_point_scale == 1000.0);
}

TEST_CASE("config echo parses back to the same config") {
  const RunConfig config =
      parse_run_config(R"({"topology":{"num_nodes":16},"seed":9})");
  const std::string echo = run_config_to_json(config);
  const RunConfig back = parse_run_config(echo);
  CHECK(run_config_to_json(back) == echo);
  CHECK(back.topology.num_nodes == 16);
  CHECK(back.seed == 9);
  CHECK(back.resolved_num_flows() == config.resolved_num_flows());
}

TEST_CASE("invalid configs name the offending field") {
  try {
    parse_run_config(R"({"overall_load_rate": 0.0})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "overall_load_rate");
  }

  try {
    parse_run_config(R"({"topology": {"num_nodes": 9, "num_racks": 4}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "topology.num_racks");
  }

  CHECK_THROWS_AS(parse_run_config(R"({"packer": "quantum"})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"num_flows": "sometimes"})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"num_flows": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
  CHECK_THROWS_AS(
      parse_run_config(R"({"size_dist": {"family": "gaussian"}})"),
      ConfigError);
}

TEST_CASE("multimodal mixture config parses and echoes") {
  const RunConfig config = parse_run_config(R"({
    "size_dist": {"family": "multimodal-mixture",
                  "modes": [{"weight": 0.3, "mu": 0.0, "sigma": 0.5},
                            {"weight": 0.7, "mu": 2.0, "sigma": 0.3}],
                  "min": 0.01, "max": 1000.0}})");
  CHECK(config.size_dist.family_name() == "multimodal-mixture");
  const RunConfig back = parse_run_config(run_config_to_json(config));
  CHECK(back.size_dist.family_name() == "multimodal-mixture");

  // Bad weights are rejected at parse time.
  CHECK_THROWS_AS(parse_run_config(R"({
    "size_dist": {"family": "multimodal-mixture",
                  "modes": [{"weight": 0.3, "mu": 0.0, "sigma": 0.5}],
                  "min": 0.01, "max": 1000.0}})"),
                  ConfigError);
}

TEST_CASE("packer names round-trip") {
  CHECK(packer_from_name("original") == PackerKind::original);
  CHECK(packer_from_name("vectorised") == PackerKind::vectorised);
  CHECK(packer_from_name("vectorized") == PackerKind::vectorised);
  CHECK(packer_name(PackerKind::original) == std::string("original"));
  CHECK_THROWS_AS(packer_from_name("fast"), ConfigError);
}
