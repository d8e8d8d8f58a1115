#ifndef SYMPROD_ERROR_HPP
#define SYMPROD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace symprod {

/// Failure categories raised by the library. The CLI maps every one of these
/// to exit code 1 except ConfigParse, which maps to 2.
enum class ErrorKind {
  InvalidArgument,
  InvalidGeometry,
  BoundaryProximity,
  Nonconvergent,
  KernelProximity,
  WrongRegion,
  Degenerate,
  CoincidentNodes,
  RootFailure,
  AsymmetryDetected,
  ArityTooLarge,
  TooManyPoints,
  InsufficientPairs,
  MissingDerivativeField,
  ConfigParse,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::InvalidArgument: return "invalid-argument";
  case ErrorKind::InvalidGeometry: return "invalid-geometry";
  case ErrorKind::BoundaryProximity: return "boundary-proximity";
  case ErrorKind::Nonconvergent: return "nonconvergent";
  case ErrorKind::KernelProximity: return "kernel-proximity";
  case ErrorKind::WrongRegion: return "wrong-region";
  case ErrorKind::Degenerate: return "degenerate";
  case ErrorKind::CoincidentNodes: return "coincident-nodes";
  case ErrorKind::RootFailure: return "root-failure";
  case ErrorKind::AsymmetryDetected: return "asymmetry-detected";
  case ErrorKind::ArityTooLarge: return "arity-too-large";
  case ErrorKind::TooManyPoints: return "too-many-points";
  case ErrorKind::InsufficientPairs: return "insufficient-pairs";
  case ErrorKind::MissingDerivativeField: return "missing-derivative-field";
  case ErrorKind::ConfigParse: return "config-parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string &what) {
  if (!condition)
    fail(kind, what);
}

} // namespace symprod

#endif // SYMPROD_ERROR_HPP
