#pragma once

#include <cstdint>

namespace proxy6 {

using NodeId = int32_t;
using JoinId = int32_t;

}  // namespace proxy6
