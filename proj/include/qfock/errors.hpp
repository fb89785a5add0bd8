// errors.hpp
// Error taxonomy shared by all qfock modules. Each type maps to a
// distinct CLI exit code (validation -> 1, numeric/resource -> 2).

#pragma once

#include <stdexcept>
#include <string>

namespace qfock {

// Bad inputs: unknown modes, mismatched spaces, malformed configs.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

// A computation failed to reach its declared tolerance.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg, double residual = 0.0)
        : std::runtime_error(msg), residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

// A request exceeds a configured size budget (dimension, dense-eigen limit).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

} // namespace qfock
