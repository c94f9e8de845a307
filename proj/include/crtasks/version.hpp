#pragma once

namespace crtasks {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace crtasks
