#pragma once

#include "svecm/cointegration.hpp"
#include "svecm/dataset.hpp"

#include <armadillo>

#include <optional>
#include <vector>

namespace svecm {

/**
 * Reduced-form VECM
 *
 *   dX_t = alpha (beta' X_{t-1} + beta_const) + sum_i Gamma_i dX_{t-i} + nu + u_t
 *
 * with Pi = alpha beta'. Either beta_const (restricted constant) or nu
 * (unrestricted constant) is present, or neither.
 */
struct VecmModel {
    Deterministic deterministic = Deterministic::UnrestrictedConstant;
    std::size_t p = 1;
    std::size_t r = 0;
    std::size_t n_obs = 0;  // effective sample T - p

    arma::mat alpha;                // K x r
    arma::mat beta;                 // K x r, normalized
    arma::rowvec beta_const;        // 1 x r, restricted constant only
    std::vector<arma::mat> gammas;  // p-1 matrices, K x K
    arma::vec intercept;            // total constant in the dX equation
    arma::mat sigma;                // K x K, divisor T - p
    arma::mat residuals;            // (T - p) x K

    JohansenDecomposition johansen;
    TimePanel data;

    [[nodiscard]] std::size_t n_vars() const { return alpha.n_rows; }
    [[nodiscard]] arma::mat pi() const { return alpha * beta.t(); }
    /// beta stacked with its constant row when the constant is restricted.
    [[nodiscard]] arma::mat beta_extended() const;
};

/// Estimates the VECM at rank r (1 <= r <= K-1). beta comes from the Johansen
/// eigenvectors, or from the restricted eigenproblem when a restriction is
/// supplied; alpha, Gamma and the constant then follow by least squares.
VecmModel fit_vecm(const TimePanel& panel, std::size_t p, std::size_t r,
                   Deterministic det = Deterministic::UnrestrictedConstant,
                   const std::optional<BetaRestriction>& restriction = std::nullopt);

/// Least-squares VECM given beta (K x r, or (K+1) x r with a restricted
/// constant). No Johansen step; used inside the bootstrap.
VecmModel fit_vecm_given_beta(const TimePanel& panel, std::size_t p, Deterministic det, const arma::mat& beta_ext);

/// Level-VAR coefficients A_1..A_p:
/// A_1 = I + alpha beta' + Gamma_1, A_i = Gamma_i - Gamma_{i-1}, A_p = -Gamma_{p-1}.
std::vector<arma::mat> to_level_var(const VecmModel& model);

/// Iterates X_t = nu + sum A_i X_{t-i} + e_t. `initial` holds the first p rows;
/// the result stacks them above one row per innovation.
arma::mat simulate_level_var(const std::vector<arma::mat>& A, const arma::vec& intercept, const arma::mat& initial,
                             const arma::mat& innovations);

BetaTestResult test_beta_restriction(const VecmModel& model, const BetaRestriction& restriction);

}  // namespace svecm
