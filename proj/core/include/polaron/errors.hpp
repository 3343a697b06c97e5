#pragma once

#include <stdexcept>
#include <string>

namespace polaron {

/// Invalid physical parameters or malformed run files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative solver exhausted its budget. Carries the last iterate so the
/// caller can inspect how far the iteration got.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_value, double residual, int iterations)
        : std::runtime_error(what),
          last_value(last_value),
          residual(residual),
          iterations(iterations) {}

    double last_value = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

}  // namespace polaron
