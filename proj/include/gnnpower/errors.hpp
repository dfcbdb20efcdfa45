#pragma once

#include <stdexcept>
#include <string>

namespace gnnpower {

// Malformed text input (graph files, scalar literals, spec JSON).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value or argument violates a documented precondition or invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by zero, magnitude guards, unsupported field elements.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructive check that is guaranteed by theory did not hold.
// Carries a diagnostic dump in what().
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gnnpower
