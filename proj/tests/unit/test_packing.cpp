#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "tmgen/errors.hpp"
#include "tmgen/packing.hpp"

using namespace tmgen;

namespace {

FlowSet make_flows(std::vector<InfoUnits> sizes) {
  FlowSet flows;
  flows.sizes = std::move(sizes);
  flows.arrival_times.resize(flows.sizes.size());
  for (std::size_t i = 0; i < flows.arrival_times.size(); ++i) {
    flows.arrival_times[i] = static_cast<double>(i);
  }
  flows.duration = flows.arrival_times.empty()
                       ? 0.0
                       : flows.arrival_times.back();
  return flows;
}

TargetLoads make_targets(std::vector<double> target_info, double duration) {
  TargetLoads targets;
  targets.target_info = std::move(target_info);
  targets.fractions.assign(targets.target_info.size(), 0.0);
  const double sum = std::accumulate(targets.target_info.begin(),
                                     targets.target_info.end(), 0.0);
  if (sum > 0.0) {
    for (std::size_t i = 0; i < targets.fractions.size(); ++i) {
      targets.fractions[i] = targets.target_info[i] / sum;
    }
  }
  targets.overall_load_rate = 0.5;
  targets.duration = duration;
  return targets;
}

// Full recompute of pair_remaining from the port ledgers.
bool min_rule_holds(const PackingState& state, const PairSpace& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const InfoUnits expected =
        std::min(state.src_port_remaining[pairs.src_of[i]],
                 state.dst_port_remaining[pairs.dst_of[i]]);
    if (state.pair_remaining[i] != expected) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pair_mask applies the capacity rule per element") {
  PackingState state;
  state.pair_remaining = {10, 3, 7};
  state.actual_info = {0, 0, 0};
  CHECK(pair_mask(state, 5) == std::vector<std::uint8_t>{1, 0, 1});
  CHECK(pair_mask(state, 2) == std::vector<std::uint8_t>{1, 1, 1});
  CHECK(pair_mask(state, 100) == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(pair_mask(state, 3) == std::vector<std::uint8_t>{1, 1, 1});
}

TEST_CASE("select_pair maximizes 2*target - actual") {
  Rng rng(1);
  const std::vector<std::uint8_t> mask{1, 1, 1};
  CHECK(select_pair(std::vector<InfoUnits>{4, 2, 2},
                    std::vector<InfoUnits>{0, 0, 0}, mask, rng) == 0);
  CHECK(select_pair(std::vector<InfoUnits>{3, 3},
                    std::vector<InfoUnits>{2, 0},
                    std::vector<std::uint8_t>{1, 1}, rng) == 1);
  CHECK_THROWS_AS(select_pair(std::vector<InfoUnits>{1, 1},
                              std::vector<InfoUnits>{0, 0},
                              std::vector<std::uint8_t>{0, 0}, rng),
                  PackingError);
}

TEST_CASE("select_pair breaks ties uniformly") {
  Rng rng(2024);
  const std::vector<InfoUnits> targets{2, 2};
  const std::vector<InfoUnits> actuals{0, 0};
  const std::vector<std::uint8_t> mask{1, 1};
  int first = 0;
  for (int i = 0; i < 10000; ++i) {
    if (select_pair(targets, actuals, mask, rng) == 0) ++first;
  }
  CHECK(first > 4800);
  CHECK(first < 5200);
}

TEST_CASE("select_pair agrees with a brute-force argmax oracle") {
  Rng instance_rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t p = 2 + instance_rng.below(99);
    std::vector<InfoUnits> targets(p), actuals(p);
    std::vector<std::uint8_t> mask(p);
    bool any = false;
    for (std::size_t i = 0; i < p; ++i) {
      targets[i] = static_cast<InfoUnits>(instance_rng.below(50));
      actuals[i] = static_cast<InfoUnits>(instance_rng.below(50));
      mask[i] = instance_rng.below(2) ? 1 : 0;
      any |= mask[i] != 0;
    }
    if (!any) mask[instance_rng.below(p)] = 1;

    InfoUnits best = std::numeric_limits<InfoUnits>::min();
    for (std::size_t i = 0; i < p; ++i) {
      if (mask[i]) best = std::max(best, 2 * targets[i] - actuals[i]);
    }
    Rng pick_rng(trial);
    const std::size_t chosen = select_pair(targets, actuals, mask, pick_rng);
    CHECK(mask[chosen] == 1);
    CHECK(2 * targets[chosen] - actuals[chosen] == best);
  }
}

TEST_CASE("update_trackers keeps the pair ledger consistent") {
  TopologyConfig topology{2, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  PackingState state = init_packing_state(topology, pairs, 20.0, 1.0);
  REQUIRE(state.pair_remaining == std::vector<InfoUnits>{10, 10});

  update_trackers(state, 3, 0, pairs);
  CHECK(state.actual_info == std::vector<InfoUnits>{3, 0});
  CHECK(state.src_port_remaining == std::vector<InfoUnits>{7, 10});
  CHECK(state.dst_port_remaining == std::vector<InfoUnits>{10, 7});
  CHECK(state.pair_remaining == std::vector<InfoUnits>{7, 10});

  // Additivity on the same pair.
  update_trackers(state, 2, 0, pairs);
  CHECK(state.actual_info == std::vector<InfoUnits>{5, 0});
  CHECK(state.pair_remaining == std::vector<InfoUnits>{5, 10});

  // Precondition violation is an internal bug sentinel.
  CHECK_THROWS_AS(update_trackers(state, 100, 0, pairs), std::logic_error);
}

TEST_CASE("incremental pair_remaining matches a full recompute") {
  TopologyConfig topology{5, 5, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    PackingState state = init_packing_state(topology, pairs, 100.0, 1.0);
    for (int step = 0; step < 40; ++step) {
      const InfoUnits size = 1 + static_cast<InfoUnits>(rng.below(4));
      std::vector<std::size_t> feasible;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (state.pair_remaining[i] >= size) feasible.push_back(i);
      }
      if (feasible.empty()) break;
      update_trackers(state, size, feasible[rng.below(feasible.size())],
                      pairs);
      REQUIRE(min_rule_holds(state, pairs));
    }
  }
}

TEST_CASE("both packers hit exact targets on the two-pair instance") {
  TopologyConfig topology{2, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  const FlowSet flows = make_flows({10, 10});
  // Ample capacity: duration 100 gives port budgets of 50 each.
  FlowSet padded = flows;
  padded.arrival_times = {0.0, 100.0};
  padded.duration = 100.0;
  const TargetLoads targets = make_targets({10.0, 10.0}, 100.0);

  Rng rng_v(1);
  const Assignment vect =
      pack_vectorised(padded, targets, topology, pairs, rng_v, 1.0);
  CHECK(vect.final_state.actual_info == std::vector<InfoUnits>{10, 10});

  Rng rng_o(1);
  const Assignment orig =
      pack_original(padded, targets, topology, pairs, rng_o, 1.0);
  CHECK(orig.final_state.actual_info == std::vector<InfoUnits>{10, 10});
}

TEST_CASE("single feasible pair receives the flow") {
  TopologyConfig topology{2, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  FlowSet flows = make_flows({5, 8});
  flows.arrival_times = {0.0, 20.0};
  flows.duration = 20.0;  // port budgets 10
  const TargetLoads targets = make_targets({0.0, 10.0}, 20.0);

  // Flow 0 (size 5) goes to pair 1 (higher score); flow 1 (size 8) no
  // longer fits pair 1, so pair 0 is the only unmasked choice.
  Rng rng(3);
  const Assignment a =
      pack_vectorised(flows, targets, topology, pairs, rng, 1.0);
  CHECK(a.pair_of_flow == std::vector<PairIndex>{1, 0});
}

TEST_CASE("oversized flow raises a packing error naming the flow") {
  TopologyConfig topology{2, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  FlowSet flows = make_flows({100});
  flows.sizes = {100, 1};
  flows.arrival_times = {0.0, 10.0};
  flows.duration = 10.0;  // budgets 5
  const TargetLoads targets = make_targets({5.0, 5.0}, 10.0);

  for (auto* pack : {&pack_vectorised, &pack_original}) {
    Rng rng(1);
    try {
      (*pack)(flows, targets, topology, pairs, rng, 1.0);
      FAIL("expected PackingError");
    } catch (const PackingError& e) {
      CHECK(e.flow_index() == 0);
      CHECK(e.flow_size() == 100);
    }
  }
}

TEST_CASE("original packer pass 2 prefers the most-loaded feasible pair") {
  TopologyConfig topology{2, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  FlowSet flows = make_flows({4, 3});
  flows.arrival_times = {0.0, 40.0};
  flows.duration = 40.0;  // budgets 20
  // Targets already exhausted: every flow lands in pass 2.
  const TargetLoads targets = make_targets({0.0, 0.0}, 40.0);

  Rng rng(1);
  const Assignment a = pack_original(flows, targets, topology, pairs, rng, 1.0);
  // First flow: tie on actual, stable order keeps pair 0 first. Second
  // flow: pair 0 now has the most assigned information.
  CHECK(a.pair_of_flow == std::vector<PairIndex>{0, 0});
}

TEST_CASE("conservation and capacity safety hold on random instances") {
  TopologyConfig topology{4, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  Rng rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t count = 20 + rng.below(30);
    std::vector<InfoUnits> sizes(count);
    InfoUnits total = 0;
    for (auto& s : sizes) {
      s = 1 + static_cast<InfoUnits>(rng.below(5));
      total += s;
    }
    FlowSet flows = make_flows(std::move(sizes));
    const double duration = static_cast<double>(total);  // ample budgets
    flows.arrival_times.back() = duration;
    flows.duration = duration;

    std::vector<double> target_info(pairs.size());
    for (auto& t : target_info) {
      t = static_cast<double>(rng.below(static_cast<std::uint64_t>(total)));
    }
    const TargetLoads targets = make_targets(std::move(target_info), duration);

    for (bool vectorised : {true, false}) {
      Rng pack_rng(trial);
      const Assignment a =
          vectorised
              ? pack_vectorised(flows, targets, topology, pairs, pack_rng, 1.0)
              : pack_original(flows, targets, topology, pairs, pack_rng, 1.0);

      CHECK(total_actual_info(a.final_state) == total);
      // Per-pair actual equals the sum of its assigned flow sizes.
      std::vector<InfoUnits> per_pair(pairs.size(), 0);
      for (std::size_t f = 0; f < flows.sizes.size(); ++f) {
        per_pair[a.pair_of_flow[f]] += flows.sizes[f];
      }
      CHECK(per_pair == a.final_state.actual_info);
      // Ports never go negative.
      for (InfoUnits v : a.final_state.src_port_remaining) CHECK(v >= 0);
      for (InfoUnits v : a.final_state.dst_port_remaining) CHECK(v >= 0);
      CHECK(min_rule_holds(a.final_state, pairs));
    }
  }
}

TEST_CASE("packers are bit-deterministic per seed") {
  TopologyConfig topology{4, 2, 1.0};
  const PairSpace pairs = build_pair_space(topology);
  std::vector<InfoUnits> sizes(200);
  Rng size_rng(5);
  InfoUnits total = 0;
  for (auto& s : sizes) {
    s = 1 + static_cast<InfoUnits>(size_rng.below(9));
    total += s;
  }
  FlowSet flows = make_flows(std::move(sizes));
  flows.arrival_times.back() = static_cast<double>(total);
  flows.duration = static_cast<double>(total);
  std::vector<double> target_info(pairs.size(),
                                  static_cast<double>(total) / pairs.size());
  const TargetLoads targets =
      make_targets(std::move(target_info), flows.duration);

  Rng a(9), b(9);
  const Assignment ra =
      pack_vectorised(flows, targets, topology, pairs, a, 1.0);
  const Assignment rb =
      pack_vectorised(flows, targets, topology, pairs, b, 1.0);
  CHECK(ra.pair_of_flow == rb.pair_of_flow);
}
