#pragma once

namespace evobandit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace evobandit
