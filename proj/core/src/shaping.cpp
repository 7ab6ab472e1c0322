#include "tmgen/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tmgen/analysis.hpp"
#include "tmgen/errors.hpp"

namespace tmgen {

std::vector<double> log_bin_edges(const ValueBounds& bounds, int num_bins) {
  if (num_bins < 1) throw DomainError("num_bins must be >= 1");
  const double log_ratio = std::log(bounds.max / bounds.min);
  std::vector<double> edges(static_cast<std::size_t>(num_bins) + 1);
  for (int k = 0; k <= num_bins; ++k) {
    edges[static_cast<std::size_t>(k)] =
        bounds.min * std::exp(log_ratio * k / num_bins);
  }
  edges.front() = bounds.min;
  edges.back() = bounds.max;
  return edges;
}

std::vector<double> histogram_pmf(std::span<const double> values,
                                  std::span<const double> edges) {
  const std::size_t num_bins = edges.size() - 1;
  std::vector<double> pmf(num_bins, 0.0);
  if (values.empty()) return pmf;
  for (double v : values) {
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    std::size_t bin = it == edges.begin()
                          ? 0
                          : static_cast<std::size_t>(it - edges.begin()) - 1;
    if (bin >= num_bins) bin = num_bins - 1;
    pmf[bin] += 1.0;
  }
  const double total = static_cast<double>(values.size());
  for (auto& p : pmf) p /= total;
  return pmf;
}

std::vector<double> discretized_pmf(const DistributionSpec& spec,
                                    std::span<const double> edges) {
  const std::size_t num_bins = edges.size() - 1;
  std::vector<double> pmf(num_bins);
  double prev = 0.0;  // all mass below min clamps into bin 0
  for (std::size_t k = 0; k + 1 < num_bins; ++k) {
    const double next = spec.cdf_below(edges[k + 1]);
    pmf[k] = std::max(0.0, next - prev);
    prev = next;
  }
  pmf[num_bins - 1] = std::max(0.0, 1.0 - prev);
  return pmf;
}

ShapingResult shape_flow_set(const DistributionSpec& size_spec,
                             const DistributionSpec& iat_spec,
                             std::size_t count, const ShapingParams& params,
                             Rng& rng) {
  if (count < 2) throw DomainError("flow count must be >= 2");
  if (!(params.jsd_threshold > 0.0) || params.jsd_threshold > 1.0) {
    throw ConfigError("shaping.jsd_threshold must be in (0, 1]",
                      "shaping.jsd_threshold");
  }
  if (params.max_attempts < 1) {
    throw ConfigError("shaping.max_attempts must be >= 1",
                      "shaping.max_attempts");
  }
  size_spec.validate("size_dist");
  iat_spec.validate("iat_dist");
  if (size_spec.bounds.min * params.unit_scale < 0.5) {
    throw ConfigError(
        "fixed_point_scale too small: size_dist.min would quantize to 0 units",
        "fixed_point_scale");
  }

  const auto size_edges = log_bin_edges(size_spec.bounds, params.num_bins);
  const auto iat_edges = log_bin_edges(iat_spec.bounds, params.num_bins);
  const auto size_target = discretized_pmf(size_spec, size_edges);
  const auto iat_target = discretized_pmf(iat_spec, iat_edges);

  double best_jsd = 1.0;
  for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
    const auto sizes = sample_distribution(size_spec, count, rng);
    const auto gaps = sample_distribution(iat_spec, count - 1, rng);

    const double size_jsd =
        jensen_shannon_distance(histogram_pmf(sizes, size_edges), size_target);
    const double iat_jsd =
        jensen_shannon_distance(histogram_pmf(gaps, iat_edges), iat_target);
    best_jsd = std::min(best_jsd, std::max(size_jsd, iat_jsd));

    if (size_jsd > params.jsd_threshold || iat_jsd > params.jsd_threshold) {
      continue;
    }

    ShapingResult result;
    result.attempts = attempt;
    result.size_jsd = size_jsd;
    result.iat_jsd = iat_jsd;
    result.flows.sizes.reserve(count);
    for (double s : sizes) {
      result.flows.sizes.push_back(to_info_units(s, params.unit_scale));
    }
    result.flows.arrival_times.resize(count);
    result.flows.arrival_times[0] = 0.0;
    for (std::size_t i = 1; i < count; ++i) {
      result.flows.arrival_times[i] =
          result.flows.arrival_times[i - 1] + gaps[i - 1];
    }
    result.flows.duration =
        result.flows.arrival_times.back() - result.flows.arrival_times.front();
    return result;
  }

  throw ShapingError("shaping failed to reach JSD threshold " +
                         format_double(params.jsd_threshold) + " within " +
                         std::to_string(params.max_attempts) +
                         " attempts (best " + format_double(best_jsd) + ")",
                     best_jsd, params.max_attempts);
}

}  // namespace tmgen
