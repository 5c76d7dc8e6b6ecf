#include "rigidity/error.hpp"

namespace rigidity {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::validation: return "validation";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::domain: return "domain";
    case ErrorKind::parity: return "parity";
    case ErrorKind::parse: return "parse";
    case ErrorKind::size: return "size";
    case ErrorKind::resource: return "resource";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::indeterminate: return "indeterminate";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return 2;
    case ErrorKind::validation:
    case ErrorKind::precondition:
    case ErrorKind::domain:
    case ErrorKind::parity:
    case ErrorKind::parse: return 3;
    case ErrorKind::size:
    case ErrorKind::resource:
    case ErrorKind::convergence:
    case ErrorKind::indeterminate: return 4;
  }
  return 1;
}

}  // namespace rigidity
