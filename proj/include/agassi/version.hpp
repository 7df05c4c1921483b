#pragma once

namespace agassi {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace agassi
