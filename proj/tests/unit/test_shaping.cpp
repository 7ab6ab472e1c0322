#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tmgen/analysis.hpp"
#include "tmgen/errors.hpp"
#include "tmgen/shaping.hpp"

using namespace tmgen;

namespace {

DistributionSpec unit_spec() {
  DistributionSpec spec;
  spec.params = UniformParams{1.0, 1.0};
  spec.bounds = {0.5, 2.0};
  return spec;
}

DistributionSpec lognormal_spec() {
  DistributionSpec spec;
  spec.params = LognormalParams{0.0, 1.0};
  spec.bounds = {1e-3, 1e3};
  return spec;
}

// Test-side histogram pass, kept independent of the shaping module's
// binning helpers.
double recheck_jsd(const std::vector<double>& values,
                   const DistributionSpec& spec, int num_bins) {
  std::vector<double> edges(num_bins + 1);
  for (int k = 0; k <= num_bins; ++k) {
    edges[k] = spec.bounds.min *
               std::pow(spec.bounds.max / spec.bounds.min,
                        static_cast<double>(k) / num_bins);
  }
  std::vector<double> empirical(num_bins, 0.0);
  for (double v : values) {
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    auto bin = static_cast<std::size_t>(
        std::max<std::ptrdiff_t>(0, it - edges.begin() - 1));
    if (bin >= static_cast<std::size_t>(num_bins)) bin = num_bins - 1;
    empirical[bin] += 1.0 / values.size();
  }
  std::vector<double> target(num_bins);
  double prev = 0.0;
  for (int k = 0; k + 1 < num_bins; ++k) {
    const double next = spec.cdf_below(edges[k + 1]);
    target[k] = next - prev;
    prev = next;
  }
  target[num_bins - 1] = 1.0 - prev;
  return jensen_shannon_distance(empirical, target);
}

}  // namespace

TEST_CASE("degenerate shaping gives unit sizes and integer arrivals") {
  ShapingParams params;
  params.unit_scale = 1.0;
  Rng rng(1);
  const auto result =
      shape_flow_set(unit_spec(), unit_spec(), 4, params, rng);
  CHECK(result.flows.sizes == std::vector<InfoUnits>{1, 1, 1, 1});
  CHECK(result.flows.arrival_times == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(result.flows.duration == 3.0);
  CHECK(result.attempts == 1);
  CHECK(result.size_jsd == doctest::Approx(0.0));
}

TEST_CASE("matched spec passes the gate on the first attempt") {
  ShapingParams params;  // threshold 0.1, 50 bins
  Rng rng(11);
  const auto result =
      shape_flow_set(lognormal_spec(), lognormal_spec(), 20000, params, rng);
  CHECK(result.attempts == 1);
  CHECK(result.size_jsd <= 0.1);
  CHECK(result.iat_jsd <= 0.1);

  // Independent histogram pass over the accepted sizes.
  std::vector<double> sizes;
  sizes.reserve(result.flows.sizes.size());
  for (InfoUnits s : result.flows.sizes) {
    sizes.push_back(static_cast<double>(s) / params.unit_scale);
  }
  CHECK(recheck_jsd(sizes, lognormal_spec(), params.num_bins) <=
        params.jsd_threshold + 1e-6);
}

TEST_CASE("impossible threshold fails with best JSD reported") {
  ShapingParams params;
  params.jsd_threshold = 1e-6;
  params.max_attempts = 3;
  Rng rng(5);
  try {
    shape_flow_set(lognormal_spec(), lognormal_spec(), 10, params, rng);
    FAIL("expected ShapingError");
  } catch (const ShapingError& e) {
    CHECK(e.best_jsd() > 0.0);
    CHECK(e.best_jsd() <= 1.0);
    CHECK(e.attempts() == 3);
  }
}

TEST_CASE("shaping is bit-deterministic per seed") {
  ShapingParams params;
  Rng a(77), b(77);
  const auto ra = shape_flow_set(lognormal_spec(), lognormal_spec(), 5000,
                                 params, a);
  const auto rb = shape_flow_set(lognormal_spec(), lognormal_spec(), 5000,
                                 params, b);
  CHECK(ra.flows.sizes == rb.flows.sizes);
  CHECK(ra.flows.arrival_times == rb.flows.arrival_times);
  CHECK(ra.flows.duration == rb.flows.duration);
}

TEST_CASE("arrivals are non-decreasing and start at zero") {
  ShapingParams params;
  Rng rng(13);
  const auto result =
      shape_flow_set(lognormal_spec(), lognormal_spec(), 2000, params, rng);
  CHECK(result.flows.arrival_times.front() == 0.0);
  CHECK(std::is_sorted(result.flows.arrival_times.begin(),
                       result.flows.arrival_times.end()));
  CHECK(result.flows.duration == result.flows.arrival_times.back());
  for (InfoUnits s : result.flows.sizes) CHECK(s > 0);
}

TEST_CASE("log bin edges span the bounds") {
  const auto edges = log_bin_edges({1.0, 100.0}, 10);
  REQUIRE(edges.size() == 11);
  CHECK(edges.front() == 1.0);
  CHECK(edges.back() == 100.0);
  CHECK(edges[5] == doctest::Approx(10.0));
}

TEST_CASE("discretized pmf sums to one and matches point masses") {
  const auto edges = log_bin_edges({0.5, 2.0}, 50);
  const auto pmf = discretized_pmf(unit_spec(), edges);
  double sum = 0.0;
  for (double p : pmf) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // The whole mass must land in the same bin the empirical histogram uses
  // for the atom at 1.0.
  const std::vector<double> atom{1.0};
  const auto empirical = histogram_pmf(atom, edges);
  CHECK(jensen_shannon_distance(empirical, pmf) == doctest::Approx(0.0));
}

TEST_CASE("shaping rejects invalid parameters") {
  ShapingParams params;
  Rng rng(1);
  CHECK_THROWS_AS(shape_flow_set(unit_spec(), unit_spec(), 1, params, rng),
                  DomainError);
  params.jsd_threshold = 0.0;
  CHECK_THROWS_AS(shape_flow_set(unit_spec(), unit_spec(), 10, params, rng),
                  ConfigError);
  params.jsd_threshold = 0.1;
  params.unit_scale = 0.1;  // min size would quantize to zero units
  CHECK_THROWS_AS(shape_flow_set(unit_spec(), unit_spec(), 10, params, rng),
                  ConfigError);
}
