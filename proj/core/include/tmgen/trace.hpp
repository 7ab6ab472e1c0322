#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tmgen/fixed_point.hpp"
#include "tmgen/packing.hpp"
#include "tmgen/shaping.hpp"
#include "tmgen/topology.hpp"

namespace tmgen {

struct FlowRecord {
  std::uint64_t flow_id = 0;
  double arrival_time = 0.0;
  InfoUnits size = 0;  // fixed-point units
  NodeIndex src = 0;
  NodeIndex dst = 0;
};

// A trace file is `#`-prefixed metadata lines (config echo, tool version,
// seed), a CSV header, then one row per flow. All numbers round-trip
// exactly, so a re-generated trace is byte-identical.
struct TrafficTrace {
  std::string config_json;  // resolved single-line config echo
  std::uint64_t seed = 0;
  std::string tool_version;
  std::vector<FlowRecord> rows;

  double duration() const {
    return rows.empty() ? 0.0
                        : rows.back().arrival_time - rows.front().arrival_time;
  }
};

std::vector<FlowRecord> make_trace_rows(const FlowSet& flows,
                                        const Assignment& assignment,
                                        const PairSpace& pairs);

void write_trace(const std::filesystem::path& path, const TrafficTrace& trace);

// Parses and validates (dense flow ids, non-decreasing arrivals, src !=
// dst, positive sizes). Throws ParseError with the 1-based line number.
TrafficTrace read_trace(const std::filesystem::path& path);

}  // namespace tmgen
