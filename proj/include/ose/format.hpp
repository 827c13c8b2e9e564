#pragma once

#include <string>

namespace ose {

/// Nine significant digits, "%.9g" style. Used for every number the tools print.
std::string format_number(double x);

/// Shortest text that parses back to exactly x.
std::string format_exact(double x);

}  // namespace ose
