#pragma once

namespace landscape {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace landscape
