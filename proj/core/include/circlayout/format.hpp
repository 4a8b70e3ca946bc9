#pragma once

#include <string>

namespace circlayout {

/// Shortest decimal string that round-trips to `value` ("nan", "inf" for
/// non-finite values).
std::string format_double(double value);

}  // namespace circlayout
