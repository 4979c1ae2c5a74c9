#pragma once

namespace rough {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rough
