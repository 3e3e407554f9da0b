#pragma once

namespace sdkp {

inline constexpr const char* library_version = "0.1.0";

}  // namespace sdkp
