#pragma once

namespace auxinwave {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace auxinwave
