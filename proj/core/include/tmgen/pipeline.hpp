#pragma once

#include <vector>

#include "tmgen/analysis.hpp"
#include "tmgen/config.hpp"
#include "tmgen/packing.hpp"
#include "tmgen/shaping.hpp"
#include "tmgen/targets.hpp"
#include "tmgen/trace.hpp"

namespace tmgen {

struct GenerateResult {
  TopologyConfig topology;
  PairSpace pairs;
  FlowSet flows;
  std::vector<double> fractions;
  TargetLoads targets;
  Assignment assignment;
  std::vector<FlowRecord> rows;
  double jsd = 0.0;           // target vs generated node distribution
  double pack_seconds = 0.0;  // stage two only
  int shaping_attempts = 0;
};

// Full pipeline: shaping -> targets -> configured packer. Deterministic:
// the run seed derives independent streams for shaping, hot-node choice
// and packer tie-breaking.
GenerateResult run_generate(const RunConfig& config);

TrafficTrace make_trace(const RunConfig& config, const GenerateResult& result);

}  // namespace tmgen
