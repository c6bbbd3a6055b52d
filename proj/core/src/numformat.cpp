#include "stormtrack/numformat.hpp"

#include <charconv>

namespace stormtrack {

namespace {

template <typename T>
std::string shortest(T v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_num(double v) { return shortest(v); }
std::string format_num(float v) { return shortest(v); }

}  // namespace stormtrack
