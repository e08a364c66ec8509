#pragma once

#include <stdexcept>
#include <string>

namespace kpze {

/// Violated precondition on a public operation.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical method on valid input.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ODE integration left the admissible envelope.
class DivergenceError : public NumericError {
public:
    DivergenceError(const std::string& what, double last_good_x)
        : NumericError(what), last_good_x_(last_good_x) {}
    double last_good_x() const noexcept { return last_good_x_; }

private:
    double last_good_x_;
};

/// A convergence certificate could not be established.
class AccuracyError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A point configuration is too shallow for the requested functional.
class TruncationError : public NumericError {
public:
    TruncationError(const std::string& what, double required_depth)
        : NumericError(what), required_depth_(required_depth) {}
    double required_depth() const noexcept { return required_depth_; }

private:
    double required_depth_;
};

namespace detail {
void require_finite(double x, const char* what);
}

}  // namespace kpze
