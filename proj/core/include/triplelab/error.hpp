#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace triplelab {

enum class ErrorKind {
  NonHermitianInput,
  DimensionMismatch,
  RankDeficient,
  InvalidDescriptor,
  ShapeMismatch,
  NotMember,
  NotTripotent,
  SpectrumViolation,
  DimensionTooSmall,
  DecompositionFailed,
  NotMinimal,
  NegativeRadicand,
  NotAProjection,
  NotCollinear,
  NotUnitCoefficients,
  InvalidPrimitive,
  NotTripotentImage,
  InconsistentSamples,
  InconsistentTag,
  NotAnIsometry,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace triplelab
