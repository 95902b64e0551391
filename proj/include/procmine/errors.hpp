#pragma once

#include <stdexcept>
#include <string>

namespace procmine {

// Malformed input document. Line and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, long line = 0, long column = 0);

  long line() const noexcept { return line_; }
  long column() const noexcept { return column_; }

 private:
  long line_;
  long column_;
};

// A caller broke a documented precondition (e.g. firing a disabled transition).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A search hit its configured budget before reaching a verdict.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The alignment search exhausted the state space without reaching a final marking.
class NoFinalReachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace procmine
