#pragma once

#include <stdexcept>
#include <string>

namespace gheight {

// Violated precondition or malformed input. Maps to CLI exit status 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An interval computation could not decide a comparison at the working
// precision. Callers retry with more bits. Maps to CLI exit status 3.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncation order too small for the requested computation.
class OrderError : public std::runtime_error {
public:
    OrderError(const std::string& what, int required)
        : std::runtime_error(what), required_order_(required) {}

    int required_order() const noexcept { return required_order_; }

private:
    int required_order_;
};

// Input is well formed but outside what the library supports
// (e.g. a field of degree > 8).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gheight
