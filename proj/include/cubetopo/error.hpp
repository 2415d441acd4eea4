#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubetopo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A desk-scale budget (dimension, face count) would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition (wrong clause class, bad index, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace cubetopo
