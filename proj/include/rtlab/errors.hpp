#pragma once

#include <stdexcept>
#include <string>

namespace rtlab {

/// Raised when a caller violates an operation's precondition or passes malformed data.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a checked invariant fails at run time (a bug or a counterexample).
class VerificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured resource cap (node budget, graph size) is exceeded.
class ResourceCapError : public std::runtime_error {
public:
  ResourceCapError(std::string cap, const std::string& what)
      : std::runtime_error(what), cap_(std::move(cap)) {}
  const std::string& cap() const noexcept { return cap_; }

private:
  std::string cap_;
};

}  // namespace rtlab
