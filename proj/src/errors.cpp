#include "fmk/errors.hpp"

namespace fmk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::DegenerateMesh: return "DegenerateMesh";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DisconnectedMesh: return "DisconnectedMesh";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::AllEigenvaluesExcluded: return "AllEigenvaluesExcluded";
    case ErrorKind::ZeroFeatures: return "ZeroFeatures";
    case ErrorKind::MissingFeatures: return "MissingFeatures";
    case ErrorKind::NonFiniteEnergy: return "NonFiniteEnergy";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace fmk
