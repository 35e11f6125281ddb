#pragma once

#include <stdexcept>
#include <string>

namespace alphaport {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed netlist or characteristic text. `line()` is 1-based, 0 when the
/// problem is not tied to a single line (e.g. a missing directive).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Argument outside the domain of a function (negative voltage, empty list...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A circuit that violates a structural precondition of an analysis.
class InvalidCircuit : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to reach its tolerance. For valid inputs this
/// indicates a bug, not a property of the circuit.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace alphaport
