#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tmgen/distributions.hpp"
#include "tmgen/fixed_point.hpp"
#include "tmgen/rng.hpp"

namespace tmgen {

// Stage-one output: sampled flow sizes (fixed-point units) and arrival
// times. Arrivals are the prefix sum of the sampled inter-arrival gaps,
// starting at 0, so duration == arrival_times.back().
struct FlowSet {
  std::vector<InfoUnits> sizes;
  std::vector<double> arrival_times;
  double duration = 0.0;
};

struct ShapingParams {
  double jsd_threshold = 0.1;
  int max_attempts = 10;
  int num_bins = 50;
  double unit_scale = 1e6;  // fixed-point units per information unit
};

struct ShapingResult {
  FlowSet flows;
  int attempts = 0;
  double size_jsd = 0.0;
  double iat_jsd = 0.0;
};

// Resamples until the empirical histograms of both sizes and inter-arrival
// gaps are within jsd_threshold of the discretized target densities, or
// throws ShapingError carrying the best JSD achieved.
ShapingResult shape_flow_set(const DistributionSpec& size_spec,
                             const DistributionSpec& iat_spec,
                             std::size_t count, const ShapingParams& params,
                             Rng& rng);

// Histogram machinery, shared with the validation tests.

// num_bins+1 logarithmically spaced edges over [bounds.min, bounds.max].
std::vector<double> log_bin_edges(const ValueBounds& bounds, int num_bins);

// Empirical pmf of values (assumed clamped into the edge range). Bin k is
// [edges[k], edges[k+1]); membership is resolved against the edge array
// itself so it is consistent with discretized_pmf for point masses.
std::vector<double> histogram_pmf(std::span<const double> values,
                                  std::span<const double> edges);

// Target bin masses from the spec's CDF. The first and last bins absorb
// the below-min / above-max tails, mirroring sample clamping.
std::vector<double> discretized_pmf(const DistributionSpec& spec,
                                    std::span<const double> edges);

}  // namespace tmgen
