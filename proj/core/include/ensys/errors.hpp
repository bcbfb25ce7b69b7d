#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ensys {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed polynomial expression or serialized system.
class ParseError : public Error {
public:
    // line is 1-based (0 when the input is a single expression), column is 1-based.
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        std::string where = line > 0 ? "line " + std::to_string(line) : "position " + std::to_string(column);
        if (line > 0 && column > 0) where += ", column " + std::to_string(column);
        return where + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

// A precondition on the arguments of an operation was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Lemma 1 family T is larger than the caller-supplied limit.
class FamilyTooLarge : public Error {
public:
    using Error::Error;
};

// The solver's node budget ran out before the box was exhausted.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A configured size cap (degree, range) was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace ensys
