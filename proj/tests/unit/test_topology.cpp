#include <doctest.h>

#include "tmgen/errors.hpp"
#include "tmgen/topology.hpp"

using namespace tmgen;

TEST_CASE("pair space enumerates all directed non-self pairs") {
  TopologyConfig config{2, 2, 1.0};
  const PairSpace space = build_pair_space(config);
  REQUIRE(space.size() == 2);
  CHECK(space.pair(0) == std::pair<NodeIndex, NodeIndex>{0, 1});
  CHECK(space.pair(1) == std::pair<NodeIndex, NodeIndex>{1, 0});
}

TEST_CASE("pair space sizes follow |N|(|N|-1)") {
  CHECK(build_pair_space({8, 4, 1.0}).size() == 56);
  CHECK(build_pair_space({1024, 4, 1.0}).size() == 1047552);
}

TEST_CASE("index_of is the inverse of the pair order") {
  const PairSpace space = build_pair_space({8, 4, 1.0});
  for (PairIndex i = 0; i < space.size(); ++i) {
    CHECK(space.index_of(space.src_of[i], space.dst_of[i]) == i);
  }
  CHECK_THROWS_AS(space.index_of(3, 3), DomainError);
  CHECK_THROWS_AS(space.index_of(8, 0), DomainError);
}

TEST_CASE("per-node pair lists have |N|-1 entries") {
  const PairSpace space = build_pair_space({6, 3, 1.0});
  for (NodeIndex n = 0; n < 6; ++n) {
    CHECK(space.pairs_by_src[n].size() == 5);
    CHECK(space.pairs_by_dst[n].size() == 5);
    for (PairIndex i : space.pairs_by_src[n]) CHECK(space.src_of[i] == n);
    for (PairIndex i : space.pairs_by_dst[n]) CHECK(space.dst_of[i] == n);
  }
}

TEST_CASE("rack_of uses contiguous blocks") {
  TopologyConfig config{8, 4, 1.0};
  CHECK(rack_of(0, config) == 0);
  CHECK(rack_of(2, config) == 1);
  CHECK(rack_of(7, config) == 3);

  // Equal-sized partition.
  std::vector<int> counts(4, 0);
  for (std::size_t n = 0; n < 8; ++n) ++counts[rack_of(n, config)];
  for (int c : counts) CHECK(c == 2);

  CHECK_THROWS_AS(rack_of(8, config), DomainError);
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(build_pair_space({0, 1, 1.0}), ConfigError);
  CHECK_THROWS_AS(build_pair_space({8, 3, 1.0}), ConfigError);
  CHECK_THROWS_AS(build_pair_space({8, 4, 0.0}), ConfigError);
  CHECK_THROWS_AS(build_pair_space({8, 0, 1.0}), ConfigError);
}
