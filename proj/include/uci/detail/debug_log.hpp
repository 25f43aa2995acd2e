#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace uci::detail {

// Diagnostics go to std::clog only when UCI_DEBUG is set.
inline void debug_log(std::string_view msg) {
  static const bool enabled = std::getenv("UCI_DEBUG") != nullptr;
  if (enabled) std::clog << "uci: " << msg << '\n';
}

}  // namespace uci::detail
