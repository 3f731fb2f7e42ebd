#pragma once

namespace dgbdt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dgbdt
