#pragma once

#include <string>

#include "openboson/params.hpp"

namespace openboson {

// 17 significant digits round-trip an IEEE double exactly, which is what
// keeps repeated runs byte-identical.
std::string fmt17(double value);

// FNV-1a 64-bit hash over the formatted parameter fields, as a fixed-width
// hex string. Stable across runs and platforms with IEEE doubles.
std::string params_hash(const SystemParams& params);

}  // namespace openboson
