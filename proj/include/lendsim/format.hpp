#pragma once

#include <string>

namespace lendsim {

// Shortest round-trip decimal text for a double; NaN renders as empty text
// (absent values in CSV columns).
std::string format_double(double value);

}  // namespace lendsim
