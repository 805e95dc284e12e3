#pragma once

namespace compartdb {

inline constexpr const char* kEngineName = "compartdb";
inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace compartdb
