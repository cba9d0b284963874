#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace svecm {

enum class AdfDeterministic { None, Constant, ConstantTrend };
enum class LagSelection { Fixed, Aic, Sc };

/// Significance levels at which unit-root critical values are tabulated.
enum class AdfLevel { OnePercent, FivePercent, TenPercent };

struct AdfResult {
    double statistic = 0.0;
    std::size_t lags_used = 0;
    std::size_t n_obs = 0;  // observations in the final regression
    AdfDeterministic deterministic = AdfDeterministic::Constant;
    std::array<double, 3> critical_values{};  // 1%, 5%, 10%
    std::optional<AdfLevel> reject_at;        // smallest level at which H0 is rejected

    [[nodiscard]] bool rejects(AdfLevel level) const {
        return statistic < critical_values[static_cast<std::size_t>(level)];
    }
};

/**
 * Augmented Dickey-Fuller test of a unit root in `series`.
 *
 * Regression: dx_t = [c] + [d*t] + rho*x_{t-1} + sum_{i=1..k} phi_i dx_{t-i} + e_t.
 * The statistic is the t-ratio on rho. With Aic/Sc, k is chosen over 0..max_lags
 * on the common sample that max_lags leaves, then the chosen model is re-fitted
 * on every observation it can use. Critical values come from the
 * MacKinnon (2010) response surfaces evaluated at the regression sample size.
 *
 * Throws TooShort when the regression would have too few degrees of freedom and
 * SingularRegression for degenerate (e.g. constant) input.
 */
AdfResult adf_test(std::span<const double> series, AdfDeterministic deterministic = AdfDeterministic::Constant,
                   std::size_t max_lags = 4, LagSelection selection = LagSelection::Sc);

/// MacKinnon response-surface critical values {1%, 5%, 10%} for n_obs observations.
std::array<double, 3> adf_critical_values(AdfDeterministic deterministic, std::size_t n_obs);

}  // namespace svecm
