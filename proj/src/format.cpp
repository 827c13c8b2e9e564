#include "ose/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace ose {

std::string format_number(double x) {
    if (x == 0.0) return "0";  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string format_exact(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace ose
