#pragma once

namespace walshtf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace walshtf
