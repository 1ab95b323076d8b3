#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heights {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `position` is a 0-based offset into the text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Input outside an operation's domain (zero element, composite prime, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Root certification or an enclosure width target failed below the
// precision ceiling.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A bounded search finished without producing a witness.
class SearchExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace heights
