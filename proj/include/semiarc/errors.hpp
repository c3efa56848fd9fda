#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semiarc {

enum class ErrorKind {
  // field
  NonPrimeCharacteristic,
  ReducibleModulus,
  InvalidModulus,
  OrderDoesNotDivide,
  DegreeDoesNotDivide,
  DependentBasis,
  NotAnElement,
  // plane
  MalformedFile,
  AxiomViolation,
  NotASubfield,
  UnsupportedPlaneKind,
  InvalidPoint,
  // point sets
  EmptyPointSet,
  NotASemiarc,
  PointInsideSet,
  // perspective
  IncompatibleParameters,
  EmptyLeg,
  InvalidLeg,
  InconsistentInput,
  EmptySelection,
  // constructions
  EvenOrder,
  BadRemovalCount,
  CaseConstraintViolated,
  BadASet,
  ChainNotNested,
  SubfieldTooSmall,
  NoFanoSubplane,
  // search
  InvalidT,
  CensusIncomplete,
  UnknownTheorem,
  // io
  MalformedCertificate,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this type; `kind()` names the
/// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace semiarc
