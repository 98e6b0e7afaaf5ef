#pragma once

namespace qic {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qic
