#pragma once

#include <limits>

namespace queuesim {

/// Times are plain binary64 values; unbounded quantities use +infinity.
using Time = double;

inline constexpr Time kInfinity = std::numeric_limits<Time>::infinity();

} // namespace queuesim
