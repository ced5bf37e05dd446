#pragma once

#include <stdexcept>
#include <string>

namespace aoiq {

// Parameter/domain violations (bad distribution parameters, inconsistent job
// specs, malformed grids). CLI maps these to exit code 2.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite values where a finite result is required. Exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures. Exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aoiq
