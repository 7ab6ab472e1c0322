// tmgen: config-driven generator for reproducible datacenter traffic traces.
//
//   tmgen generate --config cfg.json --out trace.csv
//   tmgen analyze trace.csv target.csv
//   tmgen bench --out-dir results/

#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tmgen/analysis.hpp"
#include "tmgen/bench.hpp"
#include "tmgen/config.hpp"
#include "tmgen/errors.hpp"
#include "tmgen/fixed_point.hpp"
#include "tmgen/pipeline.hpp"
#include "tmgen/trace.hpp"
#include "tmgen/version.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

void print_error(const std::string& type, const std::string& message,
                 const std::string& field = "") {
  ordered_json err;
  err["error"]["type"] = type;
  err["error"]["message"] = message;
  if (!field.empty()) err["error"]["field"] = field;
  std::cerr << err.dump() << std::endl;
}

struct GenerateOptions {
  std::string config_path;
  std::string out_path;
  std::string target_out;  // empty -> derived from out_path
  std::optional<std::size_t> nodes;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> packer;
  std::optional<double> load_rate;
  std::optional<std::string> num_flows;
};

std::filesystem::path default_target_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p.replace_extension(".target.csv");
  return p;
}

int cmd_generate(const GenerateOptions& opts) {
  tmgen::RunConfig config = tmgen::load_run_config(opts.config_path);
  if (opts.nodes) config.topology.num_nodes = *opts.nodes;
  if (opts.seed) config.seed = *opts.seed;
  if (opts.packer) config.packer = tmgen::packer_from_name(*opts.packer);
  if (opts.load_rate) config.overall_load_rate = *opts.load_rate;
  if (opts.num_flows) {
    if (*opts.num_flows == "auto") {
      config.num_flows.reset();
    } else {
      try {
        config.num_flows = std::stoull(*opts.num_flows);
      } catch (const std::exception&) {
        throw tmgen::ConfigError(
            "--num-flows must be an integer or 'auto' (got '" +
                *opts.num_flows + "')",
            "num_flows");
      }
    }
  }
  config.validate();

  const tmgen::GenerateResult result = tmgen::run_generate(config);
  tmgen::write_trace(opts.out_path, tmgen::make_trace(config, result));

  const std::filesystem::path target_path =
      opts.target_out.empty() ? default_target_path(opts.out_path)
                              : std::filesystem::path(opts.target_out);
  tmgen::export_heatmap(result.fractions, config.topology.num_nodes,
                        target_path, tmgen::HeatmapFormat::csv);

  ordered_json summary;
  summary["jsd"] = result.jsd;
  summary["pack_seconds"] = result.pack_seconds;
  summary["shaping_attempts"] = result.shaping_attempts;
  summary["num_flows"] = result.rows.size();
  summary["trace"] = std::string(opts.out_path);
  summary["target"] = target_path.string();
  std::cout << summary.dump() << std::endl;
  return 0;
}

int cmd_analyze(const std::string& trace_path, const std::string& target_path) {
  const tmgen::TrafficTrace trace = tmgen::read_trace(trace_path);
  if (trace.config_json.empty()) {
    throw tmgen::ParseError("trace is missing its config echo", trace_path, 0);
  }
  const tmgen::RunConfig config = tmgen::parse_run_config(trace.config_json);

  tmgen::MatrixReport report = tmgen::audit_capacity(
      trace, config.topology, config.fixed_point_scale);

  const auto target =
      tmgen::import_heatmap_csv(target_path, config.topology.num_nodes);
  std::vector<double> pair_units(config.topology.num_nodes *
                                     (config.topology.num_nodes - 1),
                                 0.0);
  const auto pairs = tmgen::build_pair_space(config.topology);
  double total = 0.0;
  for (const auto& row : trace.rows) {
    pair_units[pairs.index_of(row.src, row.dst)] +=
        static_cast<double>(row.size);
    total += static_cast<double>(row.size);
  }
  if (total <= 0.0) {
    throw tmgen::DomainError("trace carries no information");
  }
  for (auto& v : pair_units) v /= total;
  report.jsd = tmgen::jensen_shannon_distance(target, pair_units);

  ordered_json out;
  out["jsd"] = report.jsd;
  out["max_port_utilization"] = report.max_port_utilization;
  out["violations"] = ordered_json::array();
  for (const auto& v : report.violations) {
    out["violations"].push_back(
        {{"node", v.node},
         {"side", v.side == tmgen::PortSide::src ? "src" : "dst"},
         {"excess_units", v.excess}});
  }
  out["per_node_load"] = report.per_node_load;
  std::cout << out.dump() << std::endl;
  return report.violations.empty() ? 0 : kExitRuntime;
}

struct BenchOptions {
  std::string plan_path;
  std::string out_dir;
  std::vector<std::size_t> node_counts;
  std::vector<std::uint64_t> seeds;
  bool parallel = false;
  bool emit_traces = false;
  bool pgm = false;
};

int cmd_bench(const BenchOptions& opts) {
  tmgen::BenchPlan plan = opts.plan_path.empty()
                              ? tmgen::default_bench_plan()
                              : tmgen::load_bench_plan(opts.plan_path);
  if (!opts.node_counts.empty()) plan.node_counts = opts.node_counts;
  if (!opts.seeds.empty()) plan.seeds = opts.seeds;
  if (opts.parallel) plan.parallel = true;

  const std::filesystem::path out_dir(opts.out_dir);
  std::filesystem::create_directories(out_dir);
  if (opts.emit_traces) plan.trace_dir = out_dir / "traces";
  plan.validate();

  const tmgen::BenchResult result = tmgen::run_benchmark(plan);
  tmgen::write_bench_csv(result, out_dir / "results.csv");
  tmgen::write_speedup_csv(result, out_dir / "summary.csv");
  for (const auto& [n, fractions] : result.fractions_by_n) {
    tmgen::export_heatmap(fractions, n,
                          out_dir / ("heatmap_n" + std::to_string(n) + ".csv"),
                          tmgen::HeatmapFormat::csv);
    if (opts.pgm) {
      tmgen::export_heatmap(
          fractions, n, out_dir / ("heatmap_n" + std::to_string(n) + ".pgm"),
          tmgen::HeatmapFormat::pgm);
    }
  }

  for (const auto& row : result.rows) {
    if (row.failed) {
      std::cout << "[bench] FAILED n=" << row.num_nodes << " seed=" << row.seed
                << " " << tmgen::packer_name(row.packer) << ": " << row.error
                << "\n";
    }
  }
  for (const auto& s : result.speedups) {
    std::cout << "[bench] n=" << s.num_nodes << " speedup mean "
              << tmgen::format_double(s.mean) << " (min "
              << tmgen::format_double(s.min) << ", max "
              << tmgen::format_double(s.max) << ")\n";
  }
  std::cout << "[bench] wrote " << (out_dir / "results.csv").string() << ", "
            << (out_dir / "summary.csv").string() << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tmgen: reproducible datacenter traffic trace generator"};
  app.set_version_flag("--version", std::string("tmgen ") + tmgen::kVersion);
  app.require_subcommand(1);

  GenerateOptions gen_opts;
  auto* gen = app.add_subcommand(
      "generate", "Generate a traffic trace from a JSON config");
  gen->add_option("-c,--config", gen_opts.config_path, "Run config JSON file")
      ->required();
  gen->add_option("-o,--out", gen_opts.out_path, "Output trace CSV path")
      ->required();
  gen->add_option("--target-out", gen_opts.target_out,
                  "Target matrix CSV path (default: <out>.target.csv)");
  std::size_t nodes_flag = 0;
  gen->add_option("--nodes", nodes_flag, "Override topology.num_nodes");
  std::uint64_t seed_flag = 0;
  gen->add_option("--seed", seed_flag, "Override seed");
  std::string packer_flag;
  gen->add_option("--packer", packer_flag,
                  "Override packer: original|vectorised");
  double load_flag = 0.0;
  gen->add_option("--load-rate", load_flag, "Override overall_load_rate");
  std::string flows_flag;
  gen->add_option("--num-flows", flows_flag,
                  "Override num_flows (integer or 'auto')");

  std::string analyze_trace;
  std::string analyze_target;
  auto* analyze = app.add_subcommand(
      "analyze", "Audit a trace against a target matrix CSV");
  analyze->add_option("trace", analyze_trace, "Trace CSV path")->required();
  analyze->add_option("target", analyze_target, "Target matrix CSV path")
      ->required();

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand(
      "bench", "Time both packers across node counts and seeds");
  bench->add_option("-p,--plan", bench_opts.plan_path, "Bench plan JSON file");
  bench->add_option("-o,--out-dir", bench_opts.out_dir, "Output directory")
      ->required();
  bench->add_option("--node-counts", bench_opts.node_counts,
                    "Override node counts (e.g. --node-counts 8 16 32)");
  bench->add_option("--seeds", bench_opts.seeds, "Override seeds");
  bench->add_flag("--parallel", bench_opts.parallel,
                  "Run rows concurrently (timings may interfere)");
  bench->add_flag("--emit-traces", bench_opts.emit_traces,
                  "Write a trace CSV per (n, packer, seed)");
  bench->add_flag("--pgm", bench_opts.pgm,
                  "Also write target heatmaps as 8-bit PGM images");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen->count("--nodes")) gen_opts.nodes = nodes_flag;
      if (gen->count("--seed")) gen_opts.seed = seed_flag;
      if (gen->count("--packer")) gen_opts.packer = packer_flag;
      if (gen->count("--load-rate")) gen_opts.load_rate = load_flag;
      if (gen->count("--num-flows")) gen_opts.num_flows = flows_flag;
      return cmd_generate(gen_opts);
    }
    if (analyze->parsed()) return cmd_analyze(analyze_trace, analyze_target);
    if (bench->parsed()) return cmd_bench(bench_opts);
  } catch (const tmgen::ConfigError& e) {
    print_error("config", e.what(), e.field());
    return kExitConfig;
  } catch (const tmgen::ShapingError& e) {
    print_error("shaping", e.what());
    return kExitRuntime;
  } catch (const tmgen::PackingError& e) {
    print_error("packing", e.what());
    return kExitRuntime;
  } catch (const tmgen::ParseError& e) {
    print_error("parse", e.what());
    return kExitRuntime;
  } catch (const tmgen::Error& e) {
    print_error("runtime", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitRuntime;
  }
  return 0;
}
