#pragma once

#include <stdexcept>
#include <string>

namespace eqaff {

/// Error classes. Each maps to a distinct CLI exit code.
enum class ErrorKind {
  Io,          ///< unreadable / unwritable files, malformed formats
  Config,      ///< parameters outside their documented range
  Degenerate,  ///< insufficient or degenerate data (collinear points, too few matches)
  Numerical,   ///< NaN / instability during time stepping
  Domain,      ///< out-of-domain sampling coordinates
  Invariant,   ///< a type invariant was violated (e.g. non-unimodular matrix)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define EQAFF_DEFINE_ERROR(Name, Kind)                                 \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

EQAFF_DEFINE_ERROR(IoError, Io)
EQAFF_DEFINE_ERROR(ConfigError, Config)
EQAFF_DEFINE_ERROR(DegenerateError, Degenerate)
EQAFF_DEFINE_ERROR(NumericalError, Numerical)
EQAFF_DEFINE_ERROR(DomainError, Domain)
EQAFF_DEFINE_ERROR(InvariantError, Invariant)

#undef EQAFF_DEFINE_ERROR

/// Process exit code for an error class: 2 I/O, 3 config, 4 degenerate data,
/// 5 numerical instability. Domain and invariant violations are caller
/// mistakes and report as configuration errors.
int exit_code(ErrorKind kind) noexcept;

const char* to_string(ErrorKind kind) noexcept;

}  // namespace eqaff
