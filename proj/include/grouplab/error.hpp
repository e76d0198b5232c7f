#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grouplab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input (bad text, bad JSON, violated precondition on user data).
class InputError : public Error {
public:
    using Error::Error;
};

/// Presentation text that does not match the grammar.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A configured size bound (class cap, weight cap, generator cap, ...) would be exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic left the int64 range.
class OverflowError : public Error {
public:
    using Error::Error;
};

}  // namespace grouplab
