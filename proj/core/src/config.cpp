#include "tmgen/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tmgen/errors.hpp"
#include "tmgen/fixed_point.hpp"

namespace tmgen {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

double get_number(const json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number()) {
    throw ConfigError(field + " must be a number", field);
  }
  return j[field].get<double>();
}

std::size_t get_size(const json& j, const std::string& field,
                     std::size_t fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number_unsigned()) {
    throw ConfigError(field + " must be a non-negative integer", field);
  }
  return j[field].get<std::size_t>();
}

DistributionSpec parse_dist(const json& j, const std::string& field,
                            const DistributionSpec& fallback) {
  if (!j.contains(field)) return fallback;
  const json& d = j[field];
  if (!d.is_object()) throw ConfigError(field + " must be an object", field);

  DistributionSpec spec;
  spec.bounds.min = get_number(d, "min", fallback.bounds.min);
  spec.bounds.max = get_number(d, "max", fallback.bounds.max);

  const std::string family =
      d.contains("family") ? d["family"].get<std::string>() : std::string();
  if (family.empty()) {
    throw ConfigError(field + ".family is required", field + ".family");
  }
  if (family == "uniform") {
    UniformParams p;
    p.lo = get_number(d, "lo", 1.0);
    p.hi = get_number(d, "hi", p.lo);
    spec.params = p;
  } else if (family == "lognormal") {
    LognormalParams p;
    p.mu = get_number(d, "mu", 0.0);
    p.sigma = get_number(d, "sigma", 1.0);
    spec.params = p;
  } else if (family == "pareto") {
    ParetoParams p;
    p.shape = get_number(d, "shape", 2.0);
    p.scale = get_number(d, "scale", 1.0);
    spec.params = p;
  } else if (family == "weibull") {
    WeibullParams p;
    p.shape = get_number(d, "shape", 1.0);
    p.scale = get_number(d, "scale", 1.0);
    spec.params = p;
  } else if (family == "exponential") {
    ExponentialParams p;
    p.rate = get_number(d, "rate", 1.0);
    spec.params = p;
  } else if (family == "multimodal-mixture") {
    MixtureParams p;
    if (!d.contains("modes") || !d["modes"].is_array()) {
      throw ConfigError(field + ".modes must be an array", field + ".modes");
    }
    for (const auto& m : d["modes"]) {
      MixtureMode mode;
      mode.weight = get_number(m, "weight", 0.0);
      mode.mu = get_number(m, "mu", 0.0);
      mode.sigma = get_number(m, "sigma", 1.0);
      p.modes.push_back(mode);
    }
    spec.params = p;
  } else {
    throw ConfigError(field + ".family '" + family + "' is not one of "
                      "uniform|lognormal|pareto|weibull|exponential|"
                      "multimodal-mixture",
                      field + ".family");
  }
  spec.validate(field);
  return spec;
}

ordered_json dist_to_json(const DistributionSpec& spec) {
  ordered_json d;
  d["family"] = spec.family_name();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UniformParams>) {
          d["lo"] = p.lo;
          d["hi"] = p.hi;
        } else if constexpr (std::is_same_v<T, LognormalParams>) {
          d["mu"] = p.mu;
          d["sigma"] = p.sigma;
        } else if constexpr (std::is_same_v<T, ParetoParams>) {
          d["shape"] = p.shape;
          d["scale"] = p.scale;
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          d["shape"] = p.shape;
          d["scale"] = p.scale;
        } else if constexpr (std::is_same_v<T, ExponentialParams>) {
          d["rate"] = p.rate;
        } else {
          ordered_json modes = ordered_json::array();
          for (const auto& m : p.modes) {
            modes.push_back({{"weight", m.weight}, {"mu", m.mu},
                             {"sigma", m.sigma}});
          }
          d["modes"] = modes;
        }
      },
      spec.params);
  d["min"] = spec.bounds.min;
  d["max"] = spec.bounds.max;
  return d;
}

}  // namespace

const char* packer_name(PackerKind kind) {
  return kind == PackerKind::original ? "original" : "vectorised";
}

PackerKind packer_from_name(const std::string& name) {
  if (name == "original") return PackerKind::original;
  if (name == "vectorised" || name == "vectorized") {
    return PackerKind::vectorised;
  }
  throw ConfigError("packer must be 'original' or 'vectorised' (got '" + name +
                        "')",
                    "packer");
}

void RunConfig::validate() const {
  topology.validate();
  if (!node_dist_csv) node_dist.validate();
  size_dist.validate("size_dist");
  iat_dist.validate("iat_dist");
  if (!(overall_load_rate > 0.0) || overall_load_rate > 1.0) {
    throw ConfigError("overall_load_rate must be in (0, 1]",
                      "overall_load_rate");
  }
  if (resolved_num_flows() < 2) {
    throw ConfigError("num_flows must be >= 2", "num_flows");
  }
  if (!(shaping.jsd_threshold > 0.0) || shaping.jsd_threshold > 1.0) {
    throw ConfigError("shaping.jsd_threshold must be in (0, 1]",
                      "shaping.jsd_threshold");
  }
  if (shaping.max_attempts < 1) {
    throw ConfigError("shaping.max_attempts must be >= 1",
                      "shaping.max_attempts");
  }
  if (shaping.num_bins < 1) {
    throw ConfigError("shaping.num_bins must be >= 1", "shaping.num_bins");
  }
  if (!(fixed_point_scale > 0.0)) {
    throw ConfigError("fixed_point_scale must be > 0", "fixed_point_scale");
  }
  if (size_dist.bounds.min * fixed_point_scale < 0.5) {
    throw ConfigError(
        "fixed_point_scale too small: size_dist.min would quantize to 0 units",
        "fixed_point_scale");
  }
}

RunConfig default_university_config() {
  RunConfig config;
  config.size_dist.params = LognormalParams{0.0, 1.0};
  config.size_dist.bounds = {1e-3, 1e3};
  config.iat_dist.params = ExponentialParams{1.0};
  config.iat_dist.bounds = {1e-6, 1e3};
  return config;
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig config = default_university_config();

  if (j.contains("topology")) {
    const json& t = j["topology"];
    config.topology.num_nodes =
        get_size(t, "num_nodes", config.topology.num_nodes);
    config.topology.num_racks =
        get_size(t, "num_racks", config.topology.num_racks);
    config.topology.node_capacity =
        get_number(t, "node_capacity", config.topology.node_capacity);
  }
  if (j.contains("node_dist")) {
    const json& n = j["node_dist"];
    config.node_dist.interrack_fraction = get_number(
        n, "interrack_fraction", config.node_dist.interrack_fraction);
    config.node_dist.skew_node_fraction = get_number(
        n, "skew_node_fraction", config.node_dist.skew_node_fraction);
    config.node_dist.skew_load_fraction = get_number(
        n, "skew_load_fraction", config.node_dist.skew_load_fraction);
    if (n.contains("matrix_csv") && !n["matrix_csv"].is_null()) {
      config.node_dist_csv = n["matrix_csv"].get<std::string>();
    }
  }
  config.size_dist = parse_dist(j, "size_dist", config.size_dist);
  config.iat_dist = parse_dist(j, "iat_dist", config.iat_dist);
  config.overall_load_rate =
      get_number(j, "overall_load_rate", config.overall_load_rate);
  if (j.contains("num_flows")) {
    const json& f = j["num_flows"];
    if (f.is_string()) {
      if (f.get<std::string>() != "auto") {
        throw ConfigError("num_flows must be an integer or \"auto\"",
                          "num_flows");
      }
    } else if (f.is_number_unsigned()) {
      config.num_flows = f.get<std::size_t>();
    } else {
      throw ConfigError("num_flows must be an integer or \"auto\"",
                        "num_flows");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ConfigError("seed must be a non-negative integer", "seed");
    }
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("packer")) {
    config.packer = packer_from_name(j["packer"].get<std::string>());
  }
  if (j.contains("shaping")) {
    const json& s = j["shaping"];
    config.shaping.jsd_threshold =
        get_number(s, "jsd_threshold", config.shaping.jsd_threshold);
    config.shaping.max_attempts = static_cast<int>(
        get_number(s, "max_attempts", config.shaping.max_attempts));
    config.shaping.num_bins =
        static_cast<int>(get_number(s, "num_bins", config.shaping.num_bins));
  }
  config.fixed_point_scale =
      get_number(j, "fixed_point_scale", config.fixed_point_scale);

  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string run_config_to_json(const RunConfig& config) {
  ordered_json j;
  j["topology"] = {{"num_nodes", config.topology.num_nodes},
                   {"num_racks", config.topology.num_racks},
                   {"node_capacity", config.topology.node_capacity}};
  ordered_json node_dist = {
      {"interrack_fraction", config.node_dist.interrack_fraction},
      {"skew_node_fraction", config.node_dist.skew_node_fraction},
      {"skew_load_fraction", config.node_dist.skew_load_fraction}};
  if (config.node_dist_csv) node_dist["matrix_csv"] = *config.node_dist_csv;
  j["node_dist"] = node_dist;
  j["size_dist"] = dist_to_json(config.size_dist);
  j["iat_dist"] = dist_to_json(config.iat_dist);
  j["overall_load_rate"] = config.overall_load_rate;
  j["num_flows"] = config.resolved_num_flows();
  j["seed"] = config.seed;
  j["packer"] = packer_name(config.packer);
  j["shaping"] = {{"jsd_threshold", config.shaping.jsd_threshold},
                  {"max_attempts", config.shaping.max_attempts},
                  {"num_bins", config.shaping.num_bins}};
  j["fixed_point_scale"] = config.fixed_point_scale;
  return j.dump();
}

}  // namespace tmgen
