#pragma once

namespace paltile {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace paltile
