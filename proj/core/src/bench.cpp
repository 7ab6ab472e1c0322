#include "tmgen/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tmgen/errors.hpp"
#include "tmgen/fixed_point.hpp"
#include "tmgen/pipeline.hpp"
#include "tmgen/trace.hpp"

namespace tmgen {
namespace {

RunConfig base_run_config(const BenchPlan& plan, std::size_t num_nodes,
                          std::uint64_t seed) {
  RunConfig config;
  config.topology.num_nodes = num_nodes;
  config.topology.num_racks = plan.num_racks;
  config.topology.node_capacity = 1.0;  // calibrated below
  config.node_dist = plan.profile;
  config.size_dist = plan.size_dist;
  config.iat_dist = plan.iat_dist;
  config.overall_load_rate = plan.load_rate;
  config.num_flows = plan.flows_factor * num_nodes * num_nodes;
  config.seed = seed;
  config.shaping = plan.shaping;
  config.fixed_point_scale = plan.fixed_point_scale;
  return config;
}

struct SeedJobResult {
  std::vector<BenchRow> rows;
  std::vector<double> fractions;
};

SeedJobResult run_seed_job(const BenchPlan& plan, std::size_t n,
                           std::uint64_t seed, bool want_fractions) {
  SeedJobResult job;
  RunConfig config;
  try {
    config = bench_run_config(plan, n, seed, PackerKind::original);
  } catch (const Error& e) {
    // Shaping failed: both packer rows are failed rows.
    for (PackerKind packer : {PackerKind::original, PackerKind::vectorised}) {
      BenchRow row;
      row.num_nodes = n;
      row.packer = packer;
      row.seed = seed;
      row.num_flows = plan.flows_factor * n * n;
      row.pack_seconds = std::numeric_limits<double>::quiet_NaN();
      row.jsd = std::numeric_limits<double>::quiet_NaN();
      row.failed = true;
      row.error = e.what();
      job.rows.push_back(row);
    }
    return job;
  }

  for (PackerKind packer : {PackerKind::original, PackerKind::vectorised}) {
    config.packer = packer;
    BenchRow row;
    row.num_nodes = n;
    row.packer = packer;
    row.seed = seed;
    row.num_flows = config.resolved_num_flows();
    try {
      if (plan.warmup) run_generate(config);
      GenerateResult result = run_generate(config);
      row.pack_seconds = result.pack_seconds;
      row.jsd = result.jsd;
      if (want_fractions && job.fractions.empty()) {
        job.fractions = result.fractions;
      }
      if (plan.trace_dir) {
        std::ostringstream name;
        name << "trace_n" << n << "_s" << seed << "_" << packer_name(packer)
             << ".csv";
        write_trace(*plan.trace_dir / name.str(), make_trace(config, result));
      }
    } catch (const Error& e) {
      row.pack_seconds = std::numeric_limits<double>::quiet_NaN();
      row.jsd = std::numeric_limits<double>::quiet_NaN();
      row.failed = true;
      row.error = e.what();
    }
    job.rows.push_back(row);
  }
  return job;
}

}  // namespace

void BenchPlan::validate() const {
  if (node_counts.empty()) {
    throw ConfigError("bench.node_counts must be non-empty",
                      "bench.node_counts");
  }
  for (std::size_t i = 1; i < node_counts.size(); ++i) {
    if (node_counts[i] <= node_counts[i - 1]) {
      throw ConfigError("bench.node_counts must be strictly increasing",
                        "bench.node_counts");
    }
  }
  if (seeds.size() < 2) {
    throw ConfigError("bench.seeds needs >= 2 seeds", "bench.seeds");
  }
  if (flows_factor == 0) {
    throw ConfigError("bench.flows_factor must be positive",
                      "bench.flows_factor");
  }
  if (!(load_rate > 0.0)) {
    throw ConfigError("bench.load_rate must be > 0", "bench.load_rate");
  }
  profile.validate();
  size_dist.validate("bench.size_dist");
  iat_dist.validate("bench.iat_dist");
}

BenchPlan default_bench_plan() {
  BenchPlan plan;
  const RunConfig defaults = default_university_config();
  plan.profile = defaults.node_dist;
  plan.size_dist = defaults.size_dist;
  plan.iat_dist = defaults.iat_dist;
  return plan;
}

BenchPlan parse_bench_plan(const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid bench plan JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("bench plan must be a JSON object");

  BenchPlan plan = default_bench_plan();
  if (j.contains("node_counts")) {
    plan.node_counts = j["node_counts"].get<std::vector<std::size_t>>();
  }
  if (j.contains("seeds")) {
    plan.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  }
  if (j.contains("flows_factor")) {
    plan.flows_factor = j["flows_factor"].get<std::size_t>();
  }
  if (j.contains("load_rate")) plan.load_rate = j["load_rate"].get<double>();
  if (j.contains("num_racks")) {
    plan.num_racks = j["num_racks"].get<std::size_t>();
  }
  if (j.contains("parallel")) plan.parallel = j["parallel"].get<bool>();
  if (j.contains("warmup")) plan.warmup = j["warmup"].get<bool>();
  if (j.contains("fixed_point_scale")) {
    plan.fixed_point_scale = j["fixed_point_scale"].get<double>();
  }

  // Nested sections reuse the run-config field syntax.
  nlohmann::json wrapper;
  if (j.contains("profile")) wrapper["node_dist"] = j["profile"];
  if (j.contains("size_dist")) wrapper["size_dist"] = j["size_dist"];
  if (j.contains("iat_dist")) wrapper["iat_dist"] = j["iat_dist"];
  if (j.contains("shaping")) wrapper["shaping"] = j["shaping"];
  if (!wrapper.is_null()) {
    RunConfig parsed = parse_run_config(wrapper.dump());
    if (j.contains("profile")) plan.profile = parsed.node_dist;
    if (j.contains("size_dist")) plan.size_dist = parsed.size_dist;
    if (j.contains("iat_dist")) plan.iat_dist = parsed.iat_dist;
    if (j.contains("shaping")) plan.shaping = parsed.shaping;
  }

  plan.validate();
  return plan;
}

BenchPlan load_bench_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bench plan " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_bench_plan(buf.str());
}

RunConfig bench_run_config(const BenchPlan& plan, std::size_t num_nodes,
                           std::uint64_t seed, PackerKind packer) {
  RunConfig config = base_run_config(plan, num_nodes, seed);
  config.packer = packer;

  // Calibrate node_capacity so the realized offered load (total sampled
  // information / duration) is exactly load_rate of the aggregate port
  // rate. Shaping does not depend on capacity, so the final run re-derives
  // the same flows.
  ShapingParams shaping_params{config.shaping.jsd_threshold,
                               config.shaping.max_attempts,
                               config.shaping.num_bins,
                               config.fixed_point_scale};
  Rng shaping_rng(seed, RngStream::shaping);
  const auto shaped =
      shape_flow_set(config.size_dist, config.iat_dist,
                     config.resolved_num_flows(), shaping_params, shaping_rng);
  InfoUnits total_units = 0;
  for (InfoUnits s : shaped.flows.sizes) total_units += s;
  const double total_info =
      static_cast<double>(total_units) / config.fixed_point_scale;
  config.topology.node_capacity =
      2.0 * total_info /
      (plan.load_rate * static_cast<double>(num_nodes) * shaped.flows.duration);
  return config;
}

BenchResult run_benchmark(const BenchPlan& plan) {
  plan.validate();
  if (plan.trace_dir) std::filesystem::create_directories(*plan.trace_dir);

  BenchResult result;
  result.parallel = plan.parallel;

  std::vector<std::pair<std::size_t, std::uint64_t>> runs;
  for (std::size_t n : plan.node_counts) {
    for (std::uint64_t seed : plan.seeds) runs.emplace_back(n, seed);
  }

  std::vector<SeedJobResult> jobs(runs.size());
  if (plan.parallel) {
    std::vector<std::future<SeedJobResult>> futures;
    futures.reserve(runs.size());
    for (const auto& [n, seed] : runs) {
      const bool first_seed = seed == plan.seeds.front();
      futures.push_back(std::async(std::launch::async, run_seed_job, plan, n,
                                   seed, first_seed));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) jobs[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      jobs[i] = run_seed_job(plan, runs[i].first, runs[i].second,
                             runs[i].second == plan.seeds.front());
    }
  }

  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (auto& row : jobs[i].rows) result.rows.push_back(std::move(row));
    if (!jobs[i].fractions.empty()) {
      result.fractions_by_n.emplace(runs[i].first,
                                    std::move(jobs[i].fractions));
    }
  }

  // Speedup summary over seeds where both packers succeeded.
  for (std::size_t n : plan.node_counts) {
    double orig_sum = 0.0;
    double vect_sum = 0.0;
    std::vector<double> ratios;
    for (std::uint64_t seed : plan.seeds) {
      const BenchRow* orig = nullptr;
      const BenchRow* vect = nullptr;
      for (const auto& row : result.rows) {
        if (row.num_nodes != n || row.seed != seed || row.failed) continue;
        (row.packer == PackerKind::original ? orig : vect) = &row;
      }
      if (orig && vect && vect->pack_seconds > 0.0) {
        orig_sum += orig->pack_seconds;
        vect_sum += vect->pack_seconds;
        ratios.push_back(orig->pack_seconds / vect->pack_seconds);
      }
    }
    if (!ratios.empty() && vect_sum > 0.0) {
      SpeedupRow row;
      row.num_nodes = n;
      row.mean = orig_sum / vect_sum;
      row.min = *std::min_element(ratios.begin(), ratios.end());
      row.max = *std::max_element(ratios.begin(), ratios.end());
      result.speedups.push_back(row);
    }
  }
  return result;
}

void write_bench_csv(const BenchResult& result,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (result.parallel) {
    out << "# parallel=true: rows ran concurrently; timings may interfere\n";
  }
  out << "num_nodes,packer,seed,num_flows,pack_seconds,jsd\n";
  for (const auto& row : result.rows) {
    out << row.num_nodes << ',' << packer_name(row.packer) << ',' << row.seed
        << ',' << row.num_flows << ',' << format_double(row.pack_seconds)
        << ',' << format_double(row.jsd) << '\n';
    if (row.failed) {
      out << "# failed: n=" << row.num_nodes << " seed=" << row.seed << " "
          << packer_name(row.packer) << ": " << row.error << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_speedup_csv(const BenchResult& result,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "num_nodes,speedup_mean,speedup_min,speedup_max\n";
  for (const auto& row : result.speedups) {
    out << row.num_nodes << ',' << format_double(row.mean) << ','
        << format_double(row.min) << ',' << format_double(row.max) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace tmgen
