#pragma once

namespace mvrkm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mvrkm
