#include "eqaff/error.hpp"

namespace eqaff {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io:
      return 2;
    case ErrorKind::Config:
    case ErrorKind::Domain:
    case ErrorKind::Invariant:
      return 3;
    case ErrorKind::Degenerate:
      return 4;
    case ErrorKind::Numerical:
      return 5;
  }
  return 1;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Io:
      return "io";
    case ErrorKind::Config:
      return "config";
    case ErrorKind::Degenerate:
      return "degenerate";
    case ErrorKind::Numerical:
      return "numerical";
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Invariant:
      return "invariant";
  }
  return "unknown";
}

}  // namespace eqaff
