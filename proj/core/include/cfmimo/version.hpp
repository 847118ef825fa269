#pragma once

namespace cfmimo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cfmimo
