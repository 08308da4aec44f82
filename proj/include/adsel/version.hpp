#pragma once

namespace adsel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace adsel
