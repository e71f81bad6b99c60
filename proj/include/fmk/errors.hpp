#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fmk {

enum class ErrorKind {
  Parse,
  Io,
  DegenerateMesh,
  IndexOutOfRange,
  DisconnectedMesh,
  SolverFailure,
  InvalidK,
  ShapeMismatch,
  LengthMismatch,
  RankDeficient,
  AllEigenvaluesExcluded,
  ZeroFeatures,
  MissingFeatures,
  NonFiniteEnergy,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace fmk
