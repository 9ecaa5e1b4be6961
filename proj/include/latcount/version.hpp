#pragma once

namespace latcount {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace latcount
