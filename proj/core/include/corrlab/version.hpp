#pragma once

namespace corrlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace corrlab
