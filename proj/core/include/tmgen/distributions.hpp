#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tmgen/rng.hpp"

namespace tmgen {

// Samples are clamped into [min, max]. min must be > 0: flow sizes and
// inter-arrival gaps are strictly positive.
struct ValueBounds {
  double min = 1e-6;
  double max = 1e9;
};

struct UniformParams {
  double lo = 1.0;
  double hi = 1.0;
};

struct LognormalParams {
  double mu = 0.0;
  double sigma = 1.0;
};

struct ParetoParams {
  double shape = 2.0;  // tail exponent alpha
  double scale = 1.0;  // minimum value x_m
};

struct WeibullParams {
  double shape = 1.0;
  double scale = 1.0;
};

struct ExponentialParams {
  double rate = 1.0;
};

// Weighted mixture of lognormal modes.
struct MixtureMode {
  double weight = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
};

struct MixtureParams {
  std::vector<MixtureMode> modes;
};

using FamilyParams = std::variant<UniformParams, LognormalParams, ParetoParams,
                                  WeibullParams, ExponentialParams,
                                  MixtureParams>;

struct DistributionSpec {
  FamilyParams params = LognormalParams{};
  ValueBounds bounds;

  // Throws ConfigError; `field` prefixes the offending parameter name.
  void validate(const std::string& field = "dist") const;

  std::string family_name() const;

  // Left-continuous CDF, P(X < x), of the unclamped distribution. The
  // strict inequality matters for the degenerate (point-mass) cases.
  double cdf_below(double x) const;

  // One inverse-transform draw, clamped into bounds.
  double sample(Rng& rng) const;
};

// count i.i.d. draws, clamped into spec.bounds. Deterministic given rng.
std::vector<double> sample_distribution(const DistributionSpec& spec,
                                        std::size_t count, Rng& rng);

// Quantile of the standard normal; used for lognormal sampling.
double inverse_normal_cdf(double p);

}  // namespace tmgen
