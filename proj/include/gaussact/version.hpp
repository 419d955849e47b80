#pragma once

namespace gaussact {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gaussact
