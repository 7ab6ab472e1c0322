#pragma once

#include <charconv>
#include <cstdint>
#include <string>

#include "tmgen/errors.hpp"

namespace tmgen {

// Information is tracked in fixed-point integer units so that conservation
// and capacity checks are exact. One information unit of config space maps
// to `unit_scale` fixed-point units.
using InfoUnits = std::int64_t;

// Rounds value * scale half away from zero. Values here are non-negative,
// so this is round-half-up.
InfoUnits to_info_units(double value, double unit_scale);

// Shortest round-trip decimal representation ("0.5", not "0.500000").
std::string format_double(double value);

}  // namespace tmgen
