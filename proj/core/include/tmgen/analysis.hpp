#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include "tmgen/fixed_point.hpp"
#include "tmgen/packing.hpp"
#include "tmgen/topology.hpp"
#include "tmgen/trace.hpp"

namespace tmgen {

enum class PortSide { src, dst };

struct PortViolation {
  NodeIndex node = 0;
  PortSide side = PortSide::src;
  InfoUnits excess = 0;  // fixed-point units over budget
};

struct MatrixReport {
  // JSD vs a target matrix; filled by callers that have one (NaN until then).
  double jsd = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> per_node_load;  // max(src, dst) utilization per node
  double max_port_utilization = 0.0;
  std::vector<PortViolation> violations;
};

// Jensen-Shannon distance, base-2 logs: sqrt(KL(p||m)/2 + KL(q||m)/2) with
// m = (p+q)/2 and 0*log 0 = 0. Inputs must be equal-length probability
// vectors (sum 1 +- 1e-9, entries >= 0); result is in [0, 1].
double jensen_shannon_distance(std::span<const double> p,
                               std::span<const double> q);

// actual_info normalized to sum 1.
std::vector<double> generated_node_distribution(const Assignment& assignment);

// Recomputes per-node port totals from the trace alone and checks them
// against (node_capacity / 2) * duration. Never looks at packer state.
MatrixReport audit_capacity(const TrafficTrace& trace,
                            const TopologyConfig& topology, double unit_scale);

enum class HeatmapFormat { csv, pgm };

// CSV: |N| rows of |N| comma-separated fractions, zero diagonal.
// PGM: binary P5, linear gray scale with the max fraction at 255.
void export_heatmap(std::span<const double> fractions, std::size_t num_nodes,
                    const std::filesystem::path& path, HeatmapFormat format);

// Reads the CSV form back into a per-pair fraction vector (row-major,
// diagonal dropped). Requires a zero diagonal and a total of ~1;
// renormalizes exactly to 1.
std::vector<double> import_heatmap_csv(const std::filesystem::path& path,
                                       std::size_t expected_nodes);

}  // namespace tmgen
