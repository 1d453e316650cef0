#pragma once

#include <stdexcept>
#include <string>

namespace oraclelab {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds the desk-scale resource cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on a second use of a single-use object (channel oracle, quantum payload).
class ConsumedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a configured query or shot budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

}  // namespace detail
}  // namespace oraclelab
