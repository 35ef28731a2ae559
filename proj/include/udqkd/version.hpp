#pragma once

namespace udqkd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace udqkd
