#pragma once

namespace multisink {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace multisink
