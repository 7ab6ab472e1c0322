#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tmgen/rng.hpp"
#include "tmgen/topology.hpp"

namespace tmgen {

// "University" style node distribution controls: how much load crosses
// racks and how much is concentrated on a hot minority of nodes.
struct NodeDistConfig {
  double interrack_fraction = 0.7;
  double skew_node_fraction = 0.2;  // fraction of nodes designated hot
  double skew_load_fraction = 0.55;  // load share of the hot nodes

  void validate() const;
};

// Per-pair load fractions plus the per-pair total-information targets.
// target_info keeps the exact real-valued products; packers quantize to
// fixed-point units when they initialize their ledgers.
struct TargetLoads {
  std::vector<double> fractions;    // length |P|, sums to 1
  std::vector<double> target_info;  // length |P|, information units
  double overall_load_rate = 0.0;
  double duration = 0.0;
};

// Sum of one-directional port rates: |N| * node_capacity / 2.
double aggregate_capacity_rate(const TopologyConfig& topology);

// ceil(skew_node_fraction * N) distinct nodes, drawn uniformly.
std::vector<NodeIndex> pick_hot_nodes(const NodeDistConfig& config,
                                      std::size_t num_nodes, Rng& rng);

// Builds the per-pair fraction vector. Load splits multiplicatively across
// the four {hot,cold} x {inter,intra} groups and spreads uniformly within
// each group. A pair is hot when either endpoint is hot. Throws
// InfeasibilityError when a group with positive mass has no member pairs.
std::vector<double> build_node_distribution(const NodeDistConfig& config,
                                            const PairSpace& pairs,
                                            const TopologyConfig& topology,
                                            std::span<const NodeIndex> hot_nodes);

// Convenience overload that picks the hot set from rng.
std::vector<double> build_node_distribution(const NodeDistConfig& config,
                                            const PairSpace& pairs,
                                            const TopologyConfig& topology,
                                            Rng& rng);

// target_info[i] = fractions[i] * load_rate * aggregate_capacity_rate * duration.
std::vector<double> compute_pair_target_info(std::span<const double> fractions,
                                             double overall_load_rate,
                                             const TopologyConfig& topology,
                                             double duration);

TargetLoads build_target_loads(std::vector<double> fractions,
                               double overall_load_rate,
                               const TopologyConfig& topology, double duration);

}  // namespace tmgen
