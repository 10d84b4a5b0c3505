#pragma once

namespace rdd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdd
