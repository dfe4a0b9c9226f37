#pragma once

namespace taupsd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace taupsd
