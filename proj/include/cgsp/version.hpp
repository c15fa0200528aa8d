#pragma once

namespace cgsp {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "cgsp";

}  // namespace cgsp
