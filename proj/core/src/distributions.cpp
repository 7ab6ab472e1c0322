#include "tmgen/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "tmgen/errors.hpp"
#include "tmgen/fixed_point.hpp"

namespace tmgen {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// P(X < x) for lognormal(mu, sigma); sigma == 0 is a point mass at e^mu.
double lognormal_cdf_below(double x, double mu, double sigma) {
  if (x <= 0.0) return 0.0;
  if (sigma == 0.0) return x > std::exp(mu) ? 1.0 : 0.0;
  return normal_cdf((std::log(x) - mu) / sigma);
}

double require_positive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(field + " must be a positive finite number", field);
  }
  return v;
}

}  // namespace

double inverse_normal_cdf(double p) {
  // Acklam's rational approximation with one Halley refinement step;
  // accurate to full double precision over (0, 1).
  constexpr double kTiny = 0x1.0p-53;
  p = std::clamp(p, kTiny, 1.0 - kTiny);

  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

void DistributionSpec::validate(const std::string& field) const {
  if (!(bounds.min > 0.0)) {
    throw ConfigError(field + ".min must be > 0", field + ".min");
  }
  if (!(bounds.max > bounds.min)) {
    throw ConfigError(field + ".max must be > " + field + ".min",
                      field + ".max");
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UniformParams>) {
          require_positive(p.lo, field + ".lo");
          if (!(p.hi >= p.lo)) {
            throw ConfigError(field + ".hi must be >= " + field + ".lo",
                              field + ".hi");
          }
        } else if constexpr (std::is_same_v<T, LognormalParams>) {
          if (!std::isfinite(p.mu)) {
            throw ConfigError(field + ".mu must be finite", field + ".mu");
          }
          if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) {
            throw ConfigError(field + ".sigma must be >= 0", field + ".sigma");
          }
        } else if constexpr (std::is_same_v<T, ParetoParams>) {
          require_positive(p.shape, field + ".shape");
          require_positive(p.scale, field + ".scale");
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          require_positive(p.shape, field + ".shape");
          require_positive(p.scale, field + ".scale");
        } else if constexpr (std::is_same_v<T, ExponentialParams>) {
          require_positive(p.rate, field + ".rate");
        } else if constexpr (std::is_same_v<T, MixtureParams>) {
          if (p.modes.empty()) {
            throw ConfigError(field + ".modes must be non-empty",
                              field + ".modes");
          }
          double total = 0.0;
          for (const auto& m : p.modes) {
            require_positive(m.weight, field + ".modes[].weight");
            if (!(m.sigma >= 0.0) || !std::isfinite(m.mu)) {
              throw ConfigError(field + ".modes[] has invalid mu/sigma",
                                field + ".modes");
            }
            total += m.weight;
          }
          if (std::fabs(total - 1.0) > 1e-6) {
            throw ConfigError(field + ".modes weights must sum to 1 (got " +
                                  format_double(total) + ")",
                              field + ".modes");
          }
        }
      },
      params);
}

std::string DistributionSpec::family_name() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UniformParams>) return "uniform";
        if constexpr (std::is_same_v<T, LognormalParams>) return "lognormal";
        if constexpr (std::is_same_v<T, ParetoParams>) return "pareto";
        if constexpr (std::is_same_v<T, WeibullParams>) return "weibull";
        if constexpr (std::is_same_v<T, ExponentialParams>) return "exponential";
        return "multimodal-mixture";
      },
      params);
}

double DistributionSpec::cdf_below(double x) const {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UniformParams>) {
          if (p.hi == p.lo) return x > p.lo ? 1.0 : 0.0;
          return std::clamp((x - p.lo) / (p.hi - p.lo), 0.0, 1.0);
        } else if constexpr (std::is_same_v<T, LognormalParams>) {
          return lognormal_cdf_below(x, p.mu, p.sigma);
        } else if constexpr (std::is_same_v<T, ParetoParams>) {
          if (x <= p.scale) return 0.0;
          return 1.0 - std::pow(p.scale / x, p.shape);
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          if (x <= 0.0) return 0.0;
          return 1.0 - std::exp(-std::pow(x / p.scale, p.shape));
        } else if constexpr (std::is_same_v<T, ExponentialParams>) {
          if (x <= 0.0) return 0.0;
          return 1.0 - std::exp(-p.rate * x);
        } else {
          double acc = 0.0;
          for (const auto& m : p.modes) {
            acc += m.weight * lognormal_cdf_below(x, m.mu, m.sigma);
          }
          return acc;
        }
      },
      params);
}

double DistributionSpec::sample(Rng& rng) const {
  const double value = std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, UniformParams>) {
          return p.lo + rng.uniform01() * (p.hi - p.lo);
        } else if constexpr (std::is_same_v<T, LognormalParams>) {
          if (p.sigma == 0.0) {
            rng.next();  // keep draw count family-independent per sample
            return std::exp(p.mu);
          }
          return std::exp(p.mu + p.sigma * inverse_normal_cdf(rng.uniform01()));
        } else if constexpr (std::is_same_v<T, ParetoParams>) {
          return p.scale * std::pow(1.0 - rng.uniform01(), -1.0 / p.shape);
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          return p.scale *
                 std::pow(-std::log(1.0 - rng.uniform01()), 1.0 / p.shape);
        } else if constexpr (std::is_same_v<T, ExponentialParams>) {
          return -std::log(1.0 - rng.uniform01()) / p.rate;
        } else {
          const double u = rng.uniform01();
          double acc = 0.0;
          const MixtureMode* mode = &p.modes.back();
          for (const auto& m : p.modes) {
            acc += m.weight;
            if (u < acc) {
              mode = &m;
              break;
            }
          }
          if (mode->sigma == 0.0) {
            rng.next();
            return std::exp(mode->mu);
          }
          return std::exp(mode->mu +
                          mode->sigma * inverse_normal_cdf(rng.uniform01()));
        }
      },
      params);
  return std::clamp(value, bounds.min, bounds.max);
}

std::vector<double> sample_distribution(const DistributionSpec& spec,
                                        std::size_t count, Rng& rng) {
  if (count == 0) throw DomainError("sample count must be >= 1");
  spec.validate();
  std::vector<double> values(count);
  for (auto& v : values) v = spec.sample(rng);
  return values;
}

}  // namespace tmgen
