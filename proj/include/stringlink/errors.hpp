#pragma once

#include <stdexcept>
#include <string>

namespace stringlink {

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its mathematical domain (wrong filtration
/// level, non-primitive argument, mismatched truncation, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the input does not lie deep enough in the Milnor filtration.
class FiltrationError : public PreconditionError {
 public:
  FiltrationError(int required_level, int first_nonzero_degree)
      : PreconditionError("input is not in filtration level " +
                          std::to_string(required_level) +
                          ": first nonvanishing degree is " +
                          std::to_string(first_nonzero_degree)),
        required_level_(required_level),
        first_nonzero_degree_(first_nonzero_degree) {}

  int required_level() const noexcept { return required_level_; }
  int first_nonzero_degree() const noexcept { return first_nonzero_degree_; }

 private:
  int required_level_;
  int first_nonzero_degree_;
};

/// A mathematical invariant that must hold by construction failed. Signals a
/// bug, never bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stringlink
