#pragma once

#include <stdexcept>
#include <string>

namespace stormtrack {

/// Bad arguments, parameters, or configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed, truncated, or inconsistent input data. Maps to CLI exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stormtrack
