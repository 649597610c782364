#include "rieszmod/error.hpp"

namespace rieszmod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIdempotentInput: return "NonIdempotentInput";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::InvalidDualSystem: return "InvalidDualSystem";
    case ErrorCode::ModuleMismatch: return "ModuleMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSublinear: return "NotSublinear";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::UnsupportedHom: return "UnsupportedHom";
    case ErrorCode::CompressionViolated: return "CompressionViolated";
    case ErrorCode::DominationViolated: return "DominationViolated";
    case ErrorCode::InconsistentGenerators: return "InconsistentGenerators";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::NotHilbert: return "NotHilbert";
    case ErrorCode::HilbertCompatibility: return "HilbertCompatibility";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace rieszmod
