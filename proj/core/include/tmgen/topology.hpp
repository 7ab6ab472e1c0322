#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace tmgen {

using NodeIndex = std::uint32_t;
using PairIndex = std::uint32_t;

struct TopologyConfig {
  std::size_t num_nodes = 8;
  std::size_t num_racks = 4;
  // Full-duplex node line rate in information units per time unit. Each
  // direction (source port / destination port) gets half of it.
  double node_capacity = 1.0;

  std::size_t nodes_per_rack() const { return num_nodes / num_racks; }
  void validate() const;
};

// Rack of a node under contiguous-block assignment.
std::size_t rack_of(std::size_t node, const TopologyConfig& config);

// All directed source-destination pairs (src != dst), row-major by src
// then dst. Immutable after construction.
struct PairSpace {
  std::size_t num_nodes = 0;
  std::vector<NodeIndex> src_of;  // length |P|
  std::vector<NodeIndex> dst_of;  // length |P|
  std::vector<std::vector<PairIndex>> pairs_by_src;  // per node, |N|-1 each
  std::vector<std::vector<PairIndex>> pairs_by_dst;

  std::size_t size() const { return src_of.size(); }
  std::pair<NodeIndex, NodeIndex> pair(PairIndex i) const {
    return {src_of[i], dst_of[i]};
  }
  // Inverse of the row-major ordering; throws DomainError on bad input.
  PairIndex index_of(NodeIndex src, NodeIndex dst) const;
};

PairSpace build_pair_space(const TopologyConfig& config);

}  // namespace tmgen
