#include "tmgen/targets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "tmgen/errors.hpp"
#include "tmgen/fixed_point.hpp"

namespace tmgen {
namespace {

const char* kGroupNames[4] = {"cold-intra", "cold-inter", "hot-intra",
                              "hot-inter"};

std::size_t group_of(bool hot, bool inter) {
  return (hot ? 2u : 0u) + (inter ? 1u : 0u);
}

}  // namespace

void NodeDistConfig::validate() const {
  if (interrack_fraction < 0.0 || interrack_fraction > 1.0) {
    throw ConfigError("node_dist.interrack_fraction must be in [0, 1]",
                      "node_dist.interrack_fraction");
  }
  if (!(skew_node_fraction > 0.0) || skew_node_fraction > 1.0) {
    throw ConfigError("node_dist.skew_node_fraction must be in (0, 1]",
                      "node_dist.skew_node_fraction");
  }
  if (skew_load_fraction < 0.0 || skew_load_fraction > 1.0) {
    throw ConfigError("node_dist.skew_load_fraction must be in [0, 1]",
                      "node_dist.skew_load_fraction");
  }
}

double aggregate_capacity_rate(const TopologyConfig& topology) {
  return static_cast<double>(topology.num_nodes) * topology.node_capacity / 2.0;
}

std::vector<NodeIndex> pick_hot_nodes(const NodeDistConfig& config,
                                      std::size_t num_nodes, Rng& rng) {
  config.validate();
  const auto num_hot = static_cast<std::size_t>(
      std::ceil(config.skew_node_fraction * static_cast<double>(num_nodes)));
  std::vector<NodeIndex> nodes(num_nodes);
  std::iota(nodes.begin(), nodes.end(), NodeIndex{0});
  // Fisher-Yates prefix; std::shuffle is implementation-defined.
  for (std::size_t i = 0; i < num_hot; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(num_nodes - i));
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(num_hot);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<double> build_node_distribution(const NodeDistConfig& config,
                                            const PairSpace& pairs,
                                            const TopologyConfig& topology,
                                            std::span<const NodeIndex> hot_nodes) {
  config.validate();
  topology.validate();
  if (pairs.num_nodes != topology.num_nodes) {
    throw DomainError("pair space does not match topology");
  }

  std::vector<char> is_hot(topology.num_nodes, 0);
  for (NodeIndex n : hot_nodes) {
    if (n >= topology.num_nodes) {
      throw DomainError("hot node " + std::to_string(n) + " out of range");
    }
    is_hot[n] = 1;
  }

  // Multiplicative split: marginals reproduce both configured fractions.
  std::array<double, 4> group_mass{};
  group_mass[group_of(false, false)] =
      (1.0 - config.skew_load_fraction) * (1.0 - config.interrack_fraction);
  group_mass[group_of(false, true)] =
      (1.0 - config.skew_load_fraction) * config.interrack_fraction;
  group_mass[group_of(true, false)] =
      config.skew_load_fraction * (1.0 - config.interrack_fraction);
  group_mass[group_of(true, true)] =
      config.skew_load_fraction * config.interrack_fraction;

  const std::size_t num_pairs = pairs.size();
  std::vector<std::uint8_t> group_idx(num_pairs);
  std::array<std::size_t, 4> group_count{};
  for (std::size_t i = 0; i < num_pairs; ++i) {
    const NodeIndex src = pairs.src_of[i];
    const NodeIndex dst = pairs.dst_of[i];
    const bool hot = is_hot[src] || is_hot[dst];
    const bool inter = rack_of(src, topology) != rack_of(dst, topology);
    group_idx[i] = static_cast<std::uint8_t>(group_of(hot, inter));
    ++group_count[group_idx[i]];
  }

  for (std::size_t g = 0; g < 4; ++g) {
    if (group_mass[g] > 0.0 && group_count[g] == 0) {
      throw InfeasibilityError(
          std::string("node distribution infeasible: group ") + kGroupNames[g] +
          " requires load fraction " + format_double(group_mass[g]) +
          " but has no member pairs");
    }
  }

  std::vector<double> fractions(num_pairs, 0.0);
  std::array<double, 4> per_pair{};
  for (std::size_t g = 0; g < 4; ++g) {
    if (group_count[g] > 0) {
      per_pair[g] = group_mass[g] / static_cast<double>(group_count[g]);
    }
  }
  for (std::size_t i = 0; i < num_pairs; ++i) {
    fractions[i] = per_pair[group_idx[i]];
  }
  return fractions;
}

std::vector<double> build_node_distribution(const NodeDistConfig& config,
                                            const PairSpace& pairs,
                                            const TopologyConfig& topology,
                                            Rng& rng) {
  const auto hot = pick_hot_nodes(config, topology.num_nodes, rng);
  return build_node_distribution(config, pairs, topology, hot);
}

std::vector<double> compute_pair_target_info(std::span<const double> fractions,
                                             double overall_load_rate,
                                             const TopologyConfig& topology,
                                             double duration) {
  if (!(duration > 0.0)) {
    throw DomainError("duration must be > 0");
  }
  if (!(overall_load_rate > 0.0) || overall_load_rate > 1.0) {
    throw ConfigError("overall_load_rate must be in (0, 1]",
                      "overall_load_rate");
  }
  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0) throw DomainError("fractions must be non-negative");
    sum += f;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw DomainError("fractions must sum to 1 (got " + format_double(sum) +
                      ")");
  }

  const double scale =
      overall_load_rate * aggregate_capacity_rate(topology) * duration;
  std::vector<double> target_info(fractions.size());
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    target_info[i] = fractions[i] * scale;
  }
  return target_info;
}

TargetLoads build_target_loads(std::vector<double> fractions,
                               double overall_load_rate,
                               const TopologyConfig& topology,
                               double duration) {
  TargetLoads loads;
  loads.target_info =
      compute_pair_target_info(fractions, overall_load_rate, topology, duration);
  loads.fractions = std::move(fractions);
  loads.overall_load_rate = overall_load_rate;
  loads.duration = duration;
  return loads;
}

}  // namespace tmgen
