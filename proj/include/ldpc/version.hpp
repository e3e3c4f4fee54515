#pragma once

namespace ldpc {

inline constexpr const char* kToolName = "ldpctk";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace ldpc
