#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcog {

/// Malformed or inconsistent input (unknown vertex, bad ownership, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or brute-force size cap was exceeded.
class SizeError : public InputError {
public:
    using InputError::InputError;
};

/// The operation is not defined for this kind of instance.
class UnsupportedError : public InputError {
public:
    using InputError::InputError;
};

/// The requested optimum does not exist (e.g. spanning tree of a disconnected graph).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text could not be parsed. Carries the 1-based line, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pcog
