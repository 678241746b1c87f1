#pragma once

namespace evoc {

inline constexpr const char* kToolName = "evoc";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace evoc
