#include "vuix/errors.hpp"

namespace vuix {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedBlock: return "MalformedBlock";
    case ErrorCode::BadRow: return "BadRow";
    case ErrorCode::NoReferenceBus: return "NoReferenceBus";
    case ErrorCode::DuplicateBusId: return "DuplicateBusId";
    case ErrorCode::DanglingBranch: return "DanglingBranch";
    case ErrorCode::NoInServiceBranch: return "NoInServiceBranch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorCode::ZeroSignalPower: return "ZeroSignalPower";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SensorAlreadyAttacked: return "SensorAlreadyAttacked";
    case ErrorCode::AllSensorsAttacked: return "AllSensorsAttacked";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InconsistentTrials: return "InconsistentTrials";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::FileNotFound: return "FileNotFound";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace vuix
