// Error types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace ctment {

// A series hit its term cap before reaching the requested tolerance.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Spectrum-route probability tail exceeds the tolerance at the requested order.
class TailTooHeavyError : public TruncationError {
public:
    explicit TailTooHeavyError(const std::string& msg) : TruncationError(msg) {}
};

// Regression input is degenerate (coincident abscissae).
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ctment
