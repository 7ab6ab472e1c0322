#include "tmgen/fixed_point.hpp"

#include <cmath>

namespace tmgen {

InfoUnits to_info_units(double value, double unit_scale) {
  const double scaled = value * unit_scale;
  if (!std::isfinite(scaled) || std::fabs(scaled) >= 9.2233720368547758e18) {
    throw DomainError("fixed-point overflow: value " +
                      format_double(value) + " at scale " +
                      format_double(unit_scale));
  }
  return std::llround(scaled);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace tmgen
