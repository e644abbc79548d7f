#pragma once

#include "mems/entropy.hpp"
#include "mems/error.hpp"
#include "mems/linalg.hpp"
#include "mems/measures.hpp"
#include "mems/ops.hpp"
#include "mems/search.hpp"
#include "mems/state.hpp"
#include "mems/state_io.hpp"
#include "mems/states.hpp"
#include "mems/subsets.hpp"

namespace mems {
inline constexpr const char* kVersion = "1.0.0";
}
