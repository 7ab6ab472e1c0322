#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tmgen/fixed_point.hpp"
#include "tmgen/rng.hpp"
#include "tmgen/shaping.hpp"
#include "tmgen/targets.hpp"
#include "tmgen/topology.hpp"

namespace tmgen {

// Integer ledgers for one packing run. All quantities are fixed-point
// information units, so conservation and capacity checks are exact.
// Invariant: pair_remaining[i] == min(src_port_remaining[src_i],
// dst_port_remaining[dst_i]) after every update.
struct PackingState {
  std::vector<InfoUnits> actual_info;         // per pair
  std::vector<InfoUnits> pair_remaining;      // per pair
  std::vector<InfoUnits> src_port_remaining;  // per node
  std::vector<InfoUnits> dst_port_remaining;  // per node
};

// Port budgets start at (node_capacity / 2) * duration, i.e. the total
// information one port can carry over the trace.
PackingState init_packing_state(const TopologyConfig& topology,
                                const PairSpace& pairs, double duration,
                                double unit_scale);

// mask[i] = 0 iff pair_remaining[i] - flow_size < 0. An all-zero mask is a
// valid result; callers decide how to handle it.
std::vector<std::uint8_t> pair_mask(const PackingState& state,
                                    InfoUnits flow_size);

// Among unmasked indices, returns a uniformly random member of the argmax
// set of 2 * target_info[i] - actual_info[i]. Throws PackingError when
// every index is masked.
std::size_t select_pair(std::span<const InfoUnits> target_info,
                        std::span<const InfoUnits> actual_info,
                        std::span<const std::uint8_t> mask, Rng& rng);

// Books flow_size onto `chosen`: bumps actual_info, debits both port
// ledgers, and re-derives pair_remaining for every pair sharing the
// chosen source or destination.
void update_trackers(PackingState& state, InfoUnits flow_size,
                     std::size_t chosen, const PairSpace& pairs);

struct Assignment {
  std::vector<PairIndex> pair_of_flow;  // length |F|
  PackingState final_state;
};

// Vectorised packer: per flow, one boolean feasibility mask over all pairs
// followed by a single argmax scan with random tie-breaking.
Assignment pack_vectorised(const FlowSet& flows, const TargetLoads& targets,
                           const TopologyConfig& topology,
                           const PairSpace& pairs, Rng& rng,
                           double unit_scale);

// Baseline two-pass packer: per flow, pairs are sorted in descending order
// of information already assigned; pass 1 takes the first pair still under
// its target (with capacity), pass 2 the first pair with capacity.
Assignment pack_original(const FlowSet& flows, const TargetLoads& targets,
                         const TopologyConfig& topology,
                         const PairSpace& pairs, Rng& rng, double unit_scale);

// Exact sum of ledgered information, for conservation checks.
InfoUnits total_actual_info(const PackingState& state);

}  // namespace tmgen
