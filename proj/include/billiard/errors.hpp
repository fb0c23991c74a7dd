#pragma once

#include <stdexcept>
#include <string>

namespace billiard {

/// Rejected input: invalid triple, mismatched operands, violated precondition.
class validation_error : public std::invalid_argument {
 public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A requested computation exceeds its configured budget or guard.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check failed; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace billiard
