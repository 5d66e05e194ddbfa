#pragma once

namespace railgen {

inline constexpr const char* kVersion = "0.1.0";

} // namespace railgen
