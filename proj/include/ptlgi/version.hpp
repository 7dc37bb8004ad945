#pragma once

namespace ptlgi {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ptlgi
