#pragma once

namespace entnet::exp {

inline constexpr const char* tool_version = "0.1.0";

}  // namespace entnet::exp
