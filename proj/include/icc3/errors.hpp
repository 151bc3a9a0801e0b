#pragma once

#include <stdexcept>
#include <string>

namespace icc3 {

// Malformed text input; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Structurally valid input that violates an operation precondition.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance exceeds a documented brute-force capacity bound.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A construction-time invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace icc3
