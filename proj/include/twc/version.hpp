#pragma once

namespace twc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace twc
