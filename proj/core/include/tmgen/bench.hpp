#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmgen/config.hpp"

namespace tmgen {

// Scaling experiment: for each (node count, seed), shape 5*N^2 flows, build
// the university-profile targets and run both packers on identical inputs.
struct BenchPlan {
  std::vector<std::size_t> node_counts{8, 16, 32, 64};
  std::vector<std::uint64_t> seeds{1, 2};
  std::size_t flows_factor = 5;  // |F| = factor * |N|^2
  double load_rate = 0.5;
  std::size_t num_racks = 4;
  NodeDistConfig profile;
  DistributionSpec size_dist;
  DistributionSpec iat_dist;
  ShapingConfig shaping{0.3, 10, 50};  // looser gate: small N means few samples
  double fixed_point_scale = 1e6;
  bool warmup = true;
  bool parallel = false;  // timing interference caveat recorded in outputs
  std::optional<std::filesystem::path> trace_dir;

  void validate() const;
};

BenchPlan default_bench_plan();
BenchPlan parse_bench_plan(const std::string& json_text);
BenchPlan load_bench_plan(const std::filesystem::path& path);

struct BenchRow {
  std::size_t num_nodes = 0;
  PackerKind packer = PackerKind::original;
  std::uint64_t seed = 0;
  std::size_t num_flows = 0;
  double pack_seconds = 0.0;
  double jsd = 0.0;
  bool failed = false;
  std::string error;
};

struct SpeedupRow {
  std::size_t num_nodes = 0;
  double mean = 0.0;  // mean(original seconds) / mean(vectorised seconds)
  double min = 0.0;   // min/max of the per-seed ratios
  double max = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<SpeedupRow> speedups;
  // Target fraction matrix per node count (first seed), for heatmap export.
  std::map<std::size_t, std::vector<double>> fractions_by_n;
  bool parallel = false;
};

// Rows run sequentially unless plan.parallel; packing-infeasible runs are
// recorded as failed rows and the benchmark continues.
BenchResult run_benchmark(const BenchPlan& plan);

// For each (n, seed): the exact run configuration the benchmark executes,
// with node_capacity calibrated so the realized offered load equals
// plan.load_rate (offered = sum of flow sizes / duration, capacity =
// aggregate port rate). Re-running this config through the CLI reproduces
// the benchmark's trace bit-exactly.
RunConfig bench_run_config(const BenchPlan& plan, std::size_t num_nodes,
                           std::uint64_t seed, PackerKind packer);

// results CSV: num_nodes,packer,seed,num_flows,pack_seconds,jsd
void write_bench_csv(const BenchResult& result,
                     const std::filesystem::path& path);
// summary CSV: num_nodes,speedup_mean,speedup_min,speedup_max
void write_speedup_csv(const BenchResult& result,
                       const std::filesystem::path& path);

}  // namespace tmgen
