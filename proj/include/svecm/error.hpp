#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svecm {

enum class ErrorCode {
    // dataset
    MissingValue,
    NonConsecutiveYears,
    ParseFailure,
    NonPositiveForLog,
    MissingRole,
    // unit roots / regressions
    TooShort,
    SingularRegression,
    // cointegration
    SingularMoments,
    OutOfTable,
    InconsistentRestriction,
    NotEstimated,
    // vecm
    RankOutOfRange,
    SingularDesign,
    // svec
    InvalidRank,
    NonInvertibleCore,
    NotIdentified,
    NoConvergence,
    BootstrapFailure,
    // dynamics
    DegenerateVariance,
    // wsps
    InvalidParams,
    AllZeroCoefficients,
    // plumbing
    InvalidArgument,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace svecm
