#pragma once

namespace gf {

inline constexpr const char* engine_version = "1.0.0";

} // namespace gf
