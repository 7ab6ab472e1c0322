#include "tmgen/pipeline.hpp"

#include <chrono>

#include "tmgen/errors.hpp"
#include "tmgen/version.hpp"

namespace tmgen {

GenerateResult run_generate(const RunConfig& config) {
  config.validate();

  GenerateResult result;
  result.topology = config.topology;
  result.pairs = build_pair_space(config.topology);

  ShapingParams shaping_params{config.shaping.jsd_threshold,
                               config.shaping.max_attempts,
                               config.shaping.num_bins,
                               config.fixed_point_scale};
  Rng shaping_rng(config.seed, RngStream::shaping);
  auto shaped = shape_flow_set(config.size_dist, config.iat_dist,
                               config.resolved_num_flows(), shaping_params,
                               shaping_rng);
  result.flows = std::move(shaped.flows);
  result.shaping_attempts = shaped.attempts;

  if (config.node_dist_csv) {
    result.fractions =
        import_heatmap_csv(*config.node_dist_csv, config.topology.num_nodes);
  } else {
    Rng hot_rng(config.seed, RngStream::hot_nodes);
    result.fractions = build_node_distribution(config.node_dist, result.pairs,
                                               config.topology, hot_rng);
  }
  result.targets =
      build_target_loads(result.fractions, config.overall_load_rate,
                         config.topology, result.flows.duration);

  Rng pack_rng(config.seed, RngStream::packing);
  const auto t0 = std::chrono::steady_clock::now();
  result.assignment =
      config.packer == PackerKind::vectorised
          ? pack_vectorised(result.flows, result.targets, config.topology,
                            result.pairs, pack_rng, config.fixed_point_scale)
          : pack_original(result.flows, result.targets, config.topology,
                          result.pairs, pack_rng, config.fixed_point_scale);
  const auto t1 = std::chrono::steady_clock::now();
  result.pack_seconds = std::chrono::duration<double>(t1 - t0).count();

  result.jsd = jensen_shannon_distance(
      result.fractions, generated_node_distribution(result.assignment));
  result.rows = make_trace_rows(result.flows, result.assignment, result.pairs);
  return result;
}

TrafficTrace make_trace(const RunConfig& config, const GenerateResult& result) {
  TrafficTrace trace;
  trace.config_json = run_config_to_json(config);
  trace.seed = config.seed;
  trace.tool_version = kVersion;
  trace.rows = result.rows;
  return trace;
}

}  // namespace tmgen
