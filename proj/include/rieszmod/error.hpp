#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rieszmod {

enum class ErrorCode {
  NonIdempotentInput,
  PartitionMismatch,
  NotAPartition,
  InvalidExponent,
  SpaceMismatch,
  NegativeInput,
  InvalidSpace,
  InvalidStructure,
  InvalidDualSystem,
  ModuleMismatch,
  DimensionMismatch,
  NotSublinear,
  BoundViolated,
  UnsupportedHom,
  CompressionViolated,
  DominationViolated,
  InconsistentGenerators,
  NotGenerating,
  NotHilbert,
  HilbertCompatibility,
  EmptySet,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this type; the CLI maps it to
/// exit code 2 and a machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace rieszmod
