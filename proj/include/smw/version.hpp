#pragma once

namespace smw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace smw
