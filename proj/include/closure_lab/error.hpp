#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace closure_lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed ring-spec, element literal or config text. `position` is a
/// zero-based byte offset into the parsed input.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Syntactically valid input that violates a construction invariant
/// (e.g. "d must divide n", improper quotient ideal).
class SpecError : public Error {
public:
    using Error::Error;
};

/// A ring, enumeration or search would exceed its configured size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An element was passed to a ring it does not belong to.
class ForeignElement : public Error {
public:
    ForeignElement() : Error("element belongs to a different ring") {}
};

/// A decider's precondition does not hold (e.g. improper ideal).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Exhaustive search budget exceeded; callers treat this as "skipped".
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace closure_lab
