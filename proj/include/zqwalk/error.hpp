#pragma once

#include <stdexcept>
#include <string>

namespace zqwalk {

/// Failure categories raised by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
  kInvalidModulus,
  kValidation,
  kShape,
  kIndex,
  kParameter,
  kPrecondition,
  kUnsupported,
  kSize,
  kRange,
  kNumericalInconsistency,
  kInvalidEigenvalue,
  kHypergroupViolation,
  kNoBound,
  kCannotTruncate,
  kInvalidModel,
  kImpossibleOutcome,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidModulus: return "invalid-modulus";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kSize: return "size";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kNumericalInconsistency: return "numerical-inconsistency";
    case ErrorKind::kInvalidEigenvalue: return "invalid-eigenvalue";
    case ErrorKind::kHypergroupViolation: return "hypergroup-violation";
    case ErrorKind::kNoBound: return "no-bound";
    case ErrorKind::kCannotTruncate: return "cannot-truncate";
    case ErrorKind::kInvalidModel: return "invalid-model";
    case ErrorKind::kImpossibleOutcome: return "impossible-outcome";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process exit code for an error: 2 validation, 3 size guard, 4 numerical.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSize:
      return 3;
    case ErrorKind::kRange:
    case ErrorKind::kNumericalInconsistency:
    case ErrorKind::kInvalidEigenvalue:
    case ErrorKind::kHypergroupViolation:
    case ErrorKind::kCannotTruncate:
    case ErrorKind::kInvalidModel:
    case ErrorKind::kImpossibleOutcome:
      return 4;
    default:
      return 2;
  }
}

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

template <class Msg>
inline void require(bool ok, ErrorKind kind, const Msg& what) {
  if (!ok) fail(kind, std::string(what));
}

}  // namespace detail
}  // namespace zqwalk
