#pragma once

namespace qstar {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qstar
