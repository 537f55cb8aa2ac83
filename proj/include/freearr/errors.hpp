#ifndef FREEARR_ERRORS_HPP
#define FREEARR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freearr {

/// Bad field parameters, mixed-field arithmetic, division by zero.
class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A line or hyperplane is (or is not) in an arrangement when the operation
/// requires the opposite, or an index is out of range.
class MembershipError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed. Always a bug, never a legal outcome.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Text input could not be parsed. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace freearr

#endif
