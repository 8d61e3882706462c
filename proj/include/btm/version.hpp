#pragma once

namespace btm {

inline constexpr const char* artifact_name = "btmlab";
inline constexpr const char* artifact_version = "0.1.0";

} // namespace btm
