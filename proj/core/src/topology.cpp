#include "tmgen/topology.hpp"

#include <string>

#include "tmgen/errors.hpp"

namespace tmgen {

void TopologyConfig::validate() const {
  if (num_nodes == 0) {
    throw ConfigError("topology.num_nodes must be positive", "topology.num_nodes");
  }
  if (num_racks == 0) {
    throw ConfigError("topology.num_racks must be positive", "topology.num_racks");
  }
  if (num_nodes % num_racks != 0) {
    throw ConfigError("topology.num_racks (" + std::to_string(num_racks) +
                          ") must divide topology.num_nodes (" +
                          std::to_string(num_nodes) + ")",
                      "topology.num_racks");
  }
  if (!(node_capacity > 0.0)) {
    throw ConfigError("topology.node_capacity must be > 0",
                      "topology.node_capacity");
  }
}

std::size_t rack_of(std::size_t node, const TopologyConfig& config) {
  if (node >= config.num_nodes) {
    throw DomainError("node index " + std::to_string(node) +
                      " out of range for " + std::to_string(config.num_nodes) +
                      " nodes");
  }
  return node / config.nodes_per_rack();
}

PairIndex PairSpace::index_of(NodeIndex src, NodeIndex dst) const {
  if (src >= num_nodes || dst >= num_nodes || src == dst) {
    throw DomainError("invalid pair (" + std::to_string(src) + "," +
                      std::to_string(dst) + ")");
  }
  const std::size_t i =
      static_cast<std::size_t>(src) * (num_nodes - 1) + dst - (dst > src ? 1 : 0);
  return static_cast<PairIndex>(i);
}

PairSpace build_pair_space(const TopologyConfig& config) {
  config.validate();
  const std::size_t n = config.num_nodes;

  PairSpace space;
  space.num_nodes = n;
  space.src_of.reserve(n * (n - 1));
  space.dst_of.reserve(n * (n - 1));
  space.pairs_by_src.resize(n);
  space.pairs_by_dst.resize(n);
  for (std::size_t node = 0; node < n; ++node) {
    space.pairs_by_src[node].reserve(n - 1);
    space.pairs_by_dst[node].reserve(n - 1);
  }

  for (NodeIndex src = 0; src < n; ++src) {
    for (NodeIndex dst = 0; dst < n; ++dst) {
      if (src == dst) continue;
      const auto idx = static_cast<PairIndex>(space.src_of.size());
      space.src_of.push_back(src);
      space.dst_of.push_back(dst);
      space.pairs_by_src[src].push_back(idx);
      space.pairs_by_dst[dst].push_back(idx);
    }
  }
  return space;
}

}  // namespace tmgen
