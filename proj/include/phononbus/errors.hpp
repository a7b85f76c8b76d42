#pragma once

#include <stdexcept>
#include <string>

namespace phononbus {

// Error taxonomy maps onto CLI exit codes: config 1, numerical 2, I/O 3.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace phononbus
