#pragma once

#include <stdexcept>
#include <string>

namespace symdef {

/// Caller supplied inconsistent input (mismatched weights, bad index range,
/// malformed string, ...).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal invariant failed; indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace symdef
