#pragma once

#include <cstdint>
#include <string>

namespace stormtrack {

/// Shortest decimal string that round-trips the value (std::to_chars).
/// Locale-independent and deterministic; used for all CSV output.
std::string format_num(double v);
std::string format_num(float v);

}  // namespace stormtrack
