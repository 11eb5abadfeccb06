#pragma once

#include <stdexcept>
#include <string>

namespace vuix {

/// Failure categories surfaced by the library. The category is carried
/// alongside the human-readable message so callers can branch on it
/// (the CLI maps categories to exit codes, tests assert on them).
enum class ErrorCode {
  // case-file parsing
  MalformedBlock,
  BadRow,
  NoReferenceBus,
  DuplicateBusId,
  DanglingBranch,
  // measurement model construction
  NoInServiceBranch,
  IndexOutOfRange,
  // stochastic ensemble
  RhoOutOfRange,
  ZeroSignalPower,
  NotPositiveDefinite,
  // information metrics
  DimensionMismatch,
  SensorAlreadyAttacked,
  AllSensorsAttacked,
  LambdaOutOfRange,
  // Monte-Carlo engine
  KTooLarge,
  InconsistentTrials,
  // configuration and I/O
  InvalidConfig,
  FileNotFound,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace vuix
