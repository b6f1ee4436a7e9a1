#pragma once

#include <stdexcept>
#include <string>

namespace torusfix {

/// Malformed or inconsistent input (CLI exit code 1).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was violated (CLI exit code 2).
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace torusfix
