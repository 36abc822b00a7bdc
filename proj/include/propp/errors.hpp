#pragma once

#include <stdexcept>
#include <string>

namespace propp {

// Malformed or unsupported input: bad files, p = 2, inconsistent presentations.
// The CLI maps every InputError to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size bound (table cap, brute-force cap) would be exceeded.
class CapExceeded : public InputError {
 public:
  using InputError::InputError;
};

// An internal identity that must hold failed; indicates a bug, not bad input.
class InconsistencyFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace propp
