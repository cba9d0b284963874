#include "svecm/unitroot.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"

#include <armadillo>
#include <cmath>
#include <limits>

namespace svecm {

namespace {

// MacKinnon (2010), Table 2, N = 1: tau_inf, tau_1, tau_2, tau_3 per level.
constexpr double kSurface[3][3][4] = {
    // no deterministic terms
    {{-2.56574, -2.2358, -3.627, 0.0}, {-1.94100, -0.2686, -3.365, 31.223}, {-1.61682, 0.2656, -2.714, 25.364}},
    // constant
    {{-3.43035, -6.5393, -16.786, -79.433}, {-2.86154, -2.8903, -4.234, -40.040}, {-2.56677, -1.5384, -2.809, 0.0}},
    // constant + trend
    {{-3.95877, -9.0531, -28.428, -134.155}, {-3.41049, -4.3904, -9.036, -45.374}, {-3.12705, -2.5856, -3.925, -22.380}},
};

std::size_t n_deterministic(AdfDeterministic d) {
    switch (d) {
        case AdfDeterministic::None: return 0;
        case AdfDeterministic::Constant: return 1;
        case AdfDeterministic::ConstantTrend: return 2;
    }
    return 0;
}

struct AdfRegression {
    double statistic;
    double log_ssr_per_obs;
    std::size_t n_obs;
    std::size_t n_params;
};

// Observations t = first..T-1 (0-based positions in the level series); t >= lags + 1.
AdfRegression adf_regression(const arma::vec& x, AdfDeterministic det, std::size_t lags, std::size_t first) {
    const arma::vec dx = arma::diff(x);  // dx(t-1) = x(t) - x(t-1)
    const std::size_t n = x.n_elem - first;
    const std::size_t n_det = n_deterministic(det);
    const std::size_t n_params = n_det + 1 + lags;
    arma::mat X(n, n_params);
    arma::vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t t = first + i;
        std::size_t c = 0;
        if (n_det >= 1) {
            X(i, c++) = 1.0;
        }
        if (n_det >= 2) {
            X(i, c++) = static_cast<double>(t);
        }
        X(i, c++) = x(t - 1);
        for (std::size_t j = 1; j <= lags; ++j) {
            X(i, c++) = dx(t - 1 - j);
        }
        y(i) = dx(t - 1);
    }
    const OlsFit fit = ols(X, y);
    const double ssr = arma::dot(fit.residuals, fit.residuals);
    const double dof = static_cast<double>(n) - static_cast<double>(n_params);
    const double s2 = ssr / dof;
    const double se = std::sqrt(s2 * fit.xtx_inv(n_det, n_det));
    AdfRegression out{};
    out.statistic = fit.coef(n_det, 0) / se;
    out.log_ssr_per_obs = std::log(ssr / static_cast<double>(n));
    out.n_obs = n;
    out.n_params = n_params;
    return out;
}

}  // namespace

std::array<double, 3> adf_critical_values(AdfDeterministic deterministic, std::size_t n_obs) {
    const auto& table = kSurface[static_cast<std::size_t>(deterministic)];
    const double inv = 1.0 / static_cast<double>(n_obs);
    std::array<double, 3> cv{};
    for (std::size_t level = 0; level < 3; ++level) {
        const auto& b = table[level];
        cv[level] = b[0] + b[1] * inv + b[2] * inv * inv + b[3] * inv * inv * inv;
    }
    return cv;
}

AdfResult adf_test(std::span<const double> series, AdfDeterministic deterministic, std::size_t max_lags,
                   LagSelection selection) {
    const arma::vec x(series.data(), series.size());
    const std::size_t T = x.n_elem;
    const std::size_t n_reg_max = n_deterministic(deterministic) + 1 + max_lags;
    if (T < max_lags + 2 || T - max_lags - 2 <= n_reg_max) {
        throw Error(ErrorCode::TooShort, "series of length " + std::to_string(T) + " too short for " +
                                             std::to_string(max_lags) + " lags");
    }

    std::size_t lags = max_lags;
    if (selection != LagSelection::Fixed) {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t first = max_lags + 1;
        for (std::size_t k = 0; k <= max_lags; ++k) {
            const AdfRegression reg = adf_regression(x, deterministic, k, first);
            const double n = static_cast<double>(reg.n_obs);
            const double penalty = selection == LagSelection::Aic ? 2.0 : std::log(n);
            const double ic = reg.log_ssr_per_obs + penalty * static_cast<double>(reg.n_params) / n;
            if (ic < best) {
                best = ic;
                lags = k;
            }
        }
    }

    const AdfRegression reg = adf_regression(x, deterministic, lags, lags + 1);
    AdfResult result;
    result.statistic = reg.statistic;
    result.lags_used = lags;
    result.n_obs = reg.n_obs;
    result.deterministic = deterministic;
    result.critical_values = adf_critical_values(deterministic, reg.n_obs);
    for (auto level : {AdfLevel::OnePercent, AdfLevel::FivePercent, AdfLevel::TenPercent}) {
        if (result.rejects(level)) {
            result.reject_at = level;
            break;
        }
    }
    return result;
}

}  // namespace svecm
