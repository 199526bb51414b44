#pragma once

#include <stdexcept>
#include <string>

namespace gf {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Matrix or complex dimensions do not line up.
struct ShapeMismatchError : Error {
    explicit ShapeMismatchError(const std::string& msg) : Error(msg) {}
};

/// A computation would need basis elements or brackets beyond the stored
/// weight truncation of the algebra.
struct TruncationInsufficientError : Error {
    explicit TruncationInsufficientError(const std::string& msg) : Error(msg) {}
};

/// A trigonometric bracket would produce a Fourier mode above the bound.
struct ModeOverflowError : Error {
    explicit ModeOverflowError(const std::string& msg) : Error(msg) {}
};

/// An exactness check failed; reports the offending slot.
struct ExactnessError : Error {
    explicit ExactnessError(const std::string& msg) : Error(msg) {}
};

/// Rejected input parameter (bad order, out of desk-scale bounds, ...).
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

} // namespace gf
