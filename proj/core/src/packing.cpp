#include "tmgen/packing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tmgen/errors.hpp"

namespace tmgen {
namespace {

void fill_pair_mask(const PackingState& state, InfoUnits flow_size,
                    std::vector<std::uint8_t>& mask) {
  const std::size_t n = state.pair_remaining.size();
  mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = state.pair_remaining[i] - flow_size < 0 ? 0 : 1;
  }
}

std::size_t select_pair_impl(std::span<const InfoUnits> target_info,
                             std::span<const InfoUnits> actual_info,
                             std::span<const std::uint8_t> mask, Rng& rng,
                             std::vector<std::uint32_t>& ties) {
  InfoUnits best = 0;
  ties.clear();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const InfoUnits score = 2 * target_info[i] - actual_info[i];
    if (ties.empty() || score > best) {
      best = score;
      ties.clear();
      ties.push_back(static_cast<std::uint32_t>(i));
    } else if (score == best) {
      ties.push_back(static_cast<std::uint32_t>(i));
    }
  }
  if (ties.empty()) {
    throw PackingError("no feasible pair: every pair is masked", 0, 0);
  }
  return ties[ties.size() == 1 ? 0 : rng.below(ties.size())];
}

std::vector<InfoUnits> quantize_targets(const TargetLoads& targets,
                                        double unit_scale) {
  std::vector<InfoUnits> units(targets.target_info.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    units[i] = to_info_units(targets.target_info[i], unit_scale);
  }
  return units;
}

void check_pack_inputs(const FlowSet& flows, const TargetLoads& targets,
                       const PairSpace& pairs) {
  if (targets.target_info.size() != pairs.size()) {
    throw DomainError("target vector length does not match pair space");
  }
  if (targets.duration != flows.duration) {
    throw DomainError("targets.duration does not match flows.duration");
  }
}

[[noreturn]] void throw_infeasible(std::size_t flow_index, InfoUnits size) {
  throw PackingError("packing infeasible: flow " + std::to_string(flow_index) +
                         " of size " + std::to_string(size) +
                         " units fits no pair",
                     flow_index, size);
}

}  // namespace

PackingState init_packing_state(const TopologyConfig& topology,
                                const PairSpace& pairs, double duration,
                                double unit_scale) {
  if (!(duration > 0.0)) throw DomainError("duration must be > 0");
  const InfoUnits port_budget =
      to_info_units(topology.node_capacity / 2.0 * duration, unit_scale);
  PackingState state;
  state.actual_info.assign(pairs.size(), 0);
  state.pair_remaining.assign(pairs.size(), port_budget);
  state.src_port_remaining.assign(topology.num_nodes, port_budget);
  state.dst_port_remaining.assign(topology.num_nodes, port_budget);
  return state;
}

std::vector<std::uint8_t> pair_mask(const PackingState& state,
                                    InfoUnits flow_size) {
  if (flow_size <= 0) throw DomainError("flow size must be positive");
  std::vector<std::uint8_t> mask;
  fill_pair_mask(state, flow_size, mask);
  return mask;
}

std::size_t select_pair(std::span<const InfoUnits> target_info,
                        std::span<const InfoUnits> actual_info,
                        std::span<const std::uint8_t> mask, Rng& rng) {
  std::vector<std::uint32_t> ties;
  return select_pair_impl(target_info, actual_info, mask, rng, ties);
}

void update_trackers(PackingState& state, InfoUnits flow_size,
                     std::size_t chosen, const PairSpace& pairs) {
  if (chosen >= pairs.size()) throw DomainError("pair index out of range");
  if (state.pair_remaining[chosen] < flow_size) {
    // Internal bug sentinel: callers must mask-check first.
    throw std::logic_error("update_trackers: capacity violation on pair " +
                           std::to_string(chosen));
  }
  const NodeIndex src = pairs.src_of[chosen];
  const NodeIndex dst = pairs.dst_of[chosen];
  state.actual_info[chosen] += flow_size;
  state.src_port_remaining[src] -= flow_size;
  state.dst_port_remaining[dst] -= flow_size;

  const InfoUnits src_rem = state.src_port_remaining[src];
  for (PairIndex j : pairs.pairs_by_src[src]) {
    state.pair_remaining[j] =
        std::min(src_rem, state.dst_port_remaining[pairs.dst_of[j]]);
  }
  const InfoUnits dst_rem = state.dst_port_remaining[dst];
  for (PairIndex j : pairs.pairs_by_dst[dst]) {
    state.pair_remaining[j] =
        std::min(state.src_port_remaining[pairs.src_of[j]], dst_rem);
  }
}

Assignment pack_vectorised(const FlowSet& flows, const TargetLoads& targets,
                           const TopologyConfig& topology,
                           const PairSpace& pairs, Rng& rng,
                           double unit_scale) {
  check_pack_inputs(flows, targets, pairs);
  const auto target_units = quantize_targets(targets, unit_scale);

  Assignment result;
  result.final_state =
      init_packing_state(topology, pairs, flows.duration, unit_scale);
  PackingState& state = result.final_state;
  result.pair_of_flow.resize(flows.sizes.size());

  std::vector<std::uint8_t> mask;
  std::vector<std::uint32_t> ties;
  for (std::size_t f = 0; f < flows.sizes.size(); ++f) {
    const InfoUnits size = flows.sizes[f];
    fill_pair_mask(state, size, mask);
    std::size_t chosen;
    try {
      chosen = select_pair_impl(target_units, state.actual_info, mask, rng, ties);
    } catch (const PackingError&) {
      throw_infeasible(f, size);
    }
    update_trackers(state, size, chosen, pairs);
    result.pair_of_flow[f] = static_cast<PairIndex>(chosen);
  }
  return result;
}

Assignment pack_original(const FlowSet& flows, const TargetLoads& targets,
                         const TopologyConfig& topology,
                         const PairSpace& pairs, Rng& /*rng*/,
                         double unit_scale) {
  check_pack_inputs(flows, targets, pairs);
  const auto target_units = quantize_targets(targets, unit_scale);

  Assignment result;
  result.final_state =
      init_packing_state(topology, pairs, flows.duration, unit_scale);
  PackingState& state = result.final_state;
  result.pair_of_flow.resize(flows.sizes.size());

  std::vector<PairIndex> order(pairs.size());
  for (std::size_t f = 0; f < flows.sizes.size(); ++f) {
    const InfoUnits size = flows.sizes[f];

    // Descending by information already assigned, ties by ascending pair
    // index (same order a stable sort would give).
    std::iota(order.begin(), order.end(), PairIndex{0});
    std::sort(order.begin(), order.end(), [&state](PairIndex a, PairIndex b) {
      if (state.actual_info[a] != state.actual_info[b]) {
        return state.actual_info[a] > state.actual_info[b];
      }
      return a < b;
    });

    PairIndex chosen = 0;
    bool found = false;
    // Pass 1: first pair that would stay within its target load. The
    // capacity check here keeps pass 1 from picking an infeasible pair.
    for (PairIndex i : order) {
      if (state.actual_info[i] + size <= target_units[i] &&
          state.pair_remaining[i] >= size) {
        chosen = i;
        found = true;
        break;
      }
    }
    // Pass 2: first pair whose ports can still absorb the flow.
    if (!found) {
      for (PairIndex i : order) {
        if (state.pair_remaining[i] >= size) {
          chosen = i;
          found = true;
          break;
        }
      }
    }
    if (!found) throw_infeasible(f, size);

    update_trackers(state, size, chosen, pairs);
    result.pair_of_flow[f] = chosen;
  }
  return result;
}

InfoUnits total_actual_info(const PackingState& state) {
  InfoUnits total = 0;
  for (InfoUnits v : state.actual_info) total += v;
  return total;
}

}  // namespace tmgen
