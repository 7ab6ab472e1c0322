#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "tmgen/distributions.hpp"
#include "tmgen/shaping.hpp"
#include "tmgen/targets.hpp"
#include "tmgen/topology.hpp"

namespace tmgen {

enum class PackerKind { original, vectorised };

const char* packer_name(PackerKind kind);
PackerKind packer_from_name(const std::string& name);

struct ShapingConfig {
  double jsd_threshold = 0.1;
  int max_attempts = 10;
  int num_bins = 50;
};

// One generation run, as configured from a JSON document. Every field has
// a default, so "{}" is a valid config.
struct RunConfig {
  TopologyConfig topology;
  NodeDistConfig node_dist;
  // When set, bypasses node_dist and loads the |N|x|N| fraction matrix
  // from this CSV verbatim.
  std::optional<std::string> node_dist_csv;
  DistributionSpec size_dist;
  DistributionSpec iat_dist;
  double overall_load_rate = 0.5;
  std::optional<std::size_t> num_flows;  // empty = auto, 5 * |N|^2
  std::uint64_t seed = 0;
  PackerKind packer = PackerKind::vectorised;
  ShapingConfig shaping;
  double fixed_point_scale = 1e6;

  std::size_t resolved_num_flows() const {
    return num_flows ? *num_flows
                     : 5 * topology.num_nodes * topology.num_nodes;
  }
  void validate() const;
};

// Throws ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

// Canonical single-line echo with every field resolved; parsing it back
// reproduces the run bit-exactly.
std::string run_config_to_json(const RunConfig& config);

RunConfig default_university_config();

}  // namespace tmgen
