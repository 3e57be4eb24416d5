#pragma once

namespace scidetect {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace scidetect
