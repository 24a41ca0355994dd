#pragma once

namespace cznd {
inline constexpr const char* kVersion = "0.1.0";
}
