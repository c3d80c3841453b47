#pragma once

#include <stdexcept>
#include <string>

namespace awenc {

/// Bad configuration, schema violations, unusable input files.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures at runtime: non-finite values, divergence, guard trips.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace awenc
