#pragma once

namespace subvar {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace subvar
