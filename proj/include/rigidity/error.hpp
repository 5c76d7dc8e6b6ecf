#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

enum class ErrorKind {
  usage,
  validation,
  precondition,
  domain,
  parity,
  parse,
  size,
  resource,
  convergence,
  indeterminate,
};

/// Every failure raised by the library carries a kind; the CLI maps kinds
/// onto exit codes (2 usage, 3 validation-like, 4 resource-like).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rigidity
