#pragma once

#include <string>

#include "qdpot/common.hpp"

namespace qdpot {

/// Shortest round-trip decimal form; scientific notation at or above 1e6
/// and below 1e-5.  Independent of the global locale.
std::string format_double(double v);

/// "re,im" pair in format_double notation.
std::string format_pair(cplx c);

}  // namespace qdpot
