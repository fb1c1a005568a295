#include "triplelab/error.hpp"

namespace triplelab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::NotTripotent: return "NotTripotent";
    case ErrorKind::SpectrumViolation: return "SpectrumViolation";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DecompositionFailed: return "DecompositionFailed";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::NotAProjection: return "NotAProjection";
    case ErrorKind::NotCollinear: return "NotCollinear";
    case ErrorKind::NotUnitCoefficients: return "NotUnitCoefficients";
    case ErrorKind::InvalidPrimitive: return "InvalidPrimitive";
    case ErrorKind::NotTripotentImage: return "NotTripotentImage";
    case ErrorKind::InconsistentSamples: return "InconsistentSamples";
    case ErrorKind::InconsistentTag: return "InconsistentTag";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace triplelab
