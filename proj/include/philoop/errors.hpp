#pragma once

#include <stdexcept>
#include <string>

namespace philoop {

/// Raised when an answer would depend on coefficients outside a known window.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Division by zero, zero scaling factors, mismatched cyclotomic contexts.
class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &msg, std::size_t pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), msg_(msg), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }
    /// The message without the offset suffix.
    const std::string &message() const noexcept { return msg_; }

private:
    std::string msg_;
    std::size_t pos_;
};

/// Invalid algebraic input data (Lie/Novikov structure constants, group data).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace philoop
