#include "svecm/error.hpp"

namespace svecm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingValue: return "MissingValue";
        case ErrorCode::NonConsecutiveYears: return "NonConsecutiveYears";
        case ErrorCode::ParseFailure: return "ParseFailure";
        case ErrorCode::NonPositiveForLog: return "NonPositiveForLog";
        case ErrorCode::MissingRole: return "MissingRole";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::SingularRegression: return "SingularRegression";
        case ErrorCode::SingularMoments: return "SingularMoments";
        case ErrorCode::OutOfTable: return "OutOfTable";
        case ErrorCode::InconsistentRestriction: return "InconsistentRestriction";
        case ErrorCode::NotEstimated: return "NotEstimated";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::SingularDesign: return "SingularDesign";
        case ErrorCode::InvalidRank: return "InvalidRank";
        case ErrorCode::NonInvertibleCore: return "NonInvertibleCore";
        case ErrorCode::NotIdentified: return "NotIdentified";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::BootstrapFailure: return "BootstrapFailure";
        case ErrorCode::DegenerateVariance: return "DegenerateVariance";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::AllZeroCoefficients: return "AllZeroCoefficients";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace svecm
