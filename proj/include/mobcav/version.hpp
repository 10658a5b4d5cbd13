#pragma once

namespace mobcav {
inline constexpr const char* kVersion = "0.1.0";
}
