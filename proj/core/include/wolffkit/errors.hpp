#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wolff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

/// A point lies in the wrong region (interior expected, boundary expected, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Syntax error in a map expression; `position` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An expression parsed fine but is not a self-map of the requested domain.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure did not meet its stopping criterion within budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace wolff
