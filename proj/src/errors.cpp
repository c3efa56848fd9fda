#include "semiarc/errors.hpp"

namespace semiarc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::OrderDoesNotDivide: return "OrderDoesNotDivide";
    case ErrorKind::DegreeDoesNotDivide: return "DegreeDoesNotDivide";
    case ErrorKind::DependentBasis: return "DependentBasis";
    case ErrorKind::NotAnElement: return "NotAnElement";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::UnsupportedPlaneKind: return "UnsupportedPlaneKind";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::EmptyPointSet: return "EmptyPointSet";
    case ErrorKind::NotASemiarc: return "NotASemiarc";
    case ErrorKind::PointInsideSet: return "PointInsideSet";
    case ErrorKind::IncompatibleParameters: return "IncompatibleParameters";
    case ErrorKind::EmptyLeg: return "EmptyLeg";
    case ErrorKind::InvalidLeg: return "InvalidLeg";
    case ErrorKind::InconsistentInput: return "InconsistentInput";
    case ErrorKind::EmptySelection: return "EmptySelection";
    case ErrorKind::EvenOrder: return "EvenOrder";
    case ErrorKind::BadRemovalCount: return "BadRemovalCount";
    case ErrorKind::CaseConstraintViolated: return "CaseConstraintViolated";
    case ErrorKind::BadASet: return "BadASet";
    case ErrorKind::ChainNotNested: return "ChainNotNested";
    case ErrorKind::SubfieldTooSmall: return "SubfieldTooSmall";
    case ErrorKind::NoFanoSubplane: return "NoFanoSubplane";
    case ErrorKind::InvalidT: return "InvalidT";
    case ErrorKind::CensusIncomplete: return "CensusIncomplete";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace semiarc
