#pragma once

namespace tmgen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tmgen
