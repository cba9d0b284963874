#pragma once

#include "svecm/dataset.hpp"

#include <armadillo>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace svecm {

enum class Deterministic { None, RestrictedConstant, UnrestrictedConstant };
enum class InfoCriterion { Aic, Sc, Hq };
enum class Significance { FivePercent, OnePercent };

struct CriticalPair {
    double five = 0.0;
    double one = 0.0;

    [[nodiscard]] double at(Significance level) const {
        return level == Significance::FivePercent ? five : one;
    }
};

// ---------------------------------------------------------------------------
// Lag selection

/// Criterion values for VAR(1..max_p) in levels with a constant, all fitted on
/// the common sample t = max_p+1..T. Element i corresponds to order i+1.
std::vector<double> lag_criteria(const TimePanel& panel, std::size_t max_p, InfoCriterion criterion);

/// Order in 1..max_p minimizing the criterion (ties resolve to the smaller order).
std::size_t select_lag(const TimePanel& panel, std::size_t max_p, InfoCriterion criterion);

// ---------------------------------------------------------------------------
// Reduced-rank regression

/// Regressor blocks of dX_t = Pi* Z1_t + Psi Z2_t + u_t on t = p..T-1.
struct VecmDesign {
    arma::mat Z0;  // dX_t
    arma::mat Z1;  // X_{t-1} (plus a column of ones for a restricted constant)
    arma::mat Z2;  // dX_{t-1}, ..., dX_{t-p+1} (plus ones for an unrestricted constant)
};

VecmDesign make_design(const arma::mat& levels, std::size_t p, Deterministic det);

/// Product moments of the partialled-out blocks and the eigen-solution of
/// |lambda S11 - S10 S00^{-1} S01| = 0.
struct JohansenDecomposition {
    Deterministic deterministic = Deterministic::UnrestrictedConstant;
    std::size_t p = 1;
    std::size_t n_obs = 0;  // effective sample T - p
    std::size_t n_vars = 0;
    arma::mat S00;
    arma::mat S01;
    arma::mat S11;
    arma::vec eigenvalues;   // descending, length K
    arma::mat eigenvectors;  // rows match Z1, columns match eigenvalues, v' S11 v = I
};

/// Eigen-solution of the reduced-rank problem with beta constrained to span(H):
/// |lambda H'S11H - H'S10 S00^{-1} S01 H| = 0. Returns at most n_vars pairs,
/// eigenvectors mapped back through H. Solved by Cholesky whitening of both
/// moment matrices, which keeps the reduced problem exactly symmetric.
struct ReducedRankSolution {
    arma::vec eigenvalues;
    arma::mat vectors;
};
ReducedRankSolution solve_reduced_rank(const JohansenDecomposition& moments, const arma::mat& H);

/// Rescales beta so that its first r linearly independent rows form I_r.
/// For r = 1 this sets the first nonzero coefficient to one.
arma::mat normalize_beta(const arma::mat& beta);

// ---------------------------------------------------------------------------
// Rank tests

/// Trace-test critical values for K - r in 1..10. Throws OutOfTable.
CriticalPair trace_critical_values(std::size_t k_minus_r, Deterministic det = Deterministic::UnrestrictedConstant);

/// Saikkonen-Lutkepohl (intercept) critical values for K - r in 1..10.
CriticalPair sl_critical_values(std::size_t k_minus_r);

/// Smallest r whose statistic falls below its critical value, else K.
std::size_t decide_rank(std::span<const double> stats, std::span<const CriticalPair> critical, Significance level);

struct RankTestResult {
    arma::vec eigenvalues;  // descending
    std::vector<double> trace_stats;
    std::vector<CriticalPair> trace_critical;
    std::vector<double> sl_stats;
    std::vector<CriticalPair> sl_critical;
    std::size_t rank_five = 0;
    std::size_t rank_one = 0;

    [[nodiscard]] std::size_t selected_rank(Significance level) const {
        return level == Significance::FivePercent ? rank_five : rank_one;
    }
};

struct JohansenResult {
    RankTestResult test;
    JohansenDecomposition decomposition;
};

/// Moments and eigen-solution only (no test statistics).
JohansenDecomposition johansen_decomposition(const arma::mat& levels, std::size_t p, Deterministic det);

/// Full Johansen trace test plus the S&L statistics on the same data.
JohansenResult johansen(const TimePanel& panel, std::size_t p,
                        Deterministic det = Deterministic::UnrestrictedConstant);

struct SlTestResult {
    std::vector<double> stats;  // H0: r <= 0 .. r <= K-1
    std::vector<CriticalPair> critical;
};

/**
 * Saikkonen-Lutkepohl test for a process y_t = mu_0 + x_t.
 *
 * For each hypothesised rank the VECM with a restricted constant is fitted,
 * mu_0 is estimated by GLS (weights Omega^{-1}) from the level-VAR filtered
 * data, and the Johansen LR statistic without deterministic terms is computed
 * on y_t - mu_0.
 */
SlTestResult sl_test(const TimePanel& panel, std::size_t p);

// ---------------------------------------------------------------------------
// Restrictions on beta

/// beta = H * phi with H of size K x s.
struct BetaRestriction {
    arma::mat H;
    std::string description;

    /// (w-p) - (y-n) + c*u with c free: H spans (0,-1,1,0,0)' and e_u.
    static BetaRestriction wage_setting();
    /// beta fixed to the given K x r matrix.
    static BetaRestriction fixed(const arma::mat& beta);
};

struct BetaTestResult {
    double lr = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
    arma::mat beta;  // restricted beta, first free coefficient normalized to 1
    arma::vec restricted_eigenvalues;
};

/// LR test of span(beta) within span(H) at cointegration rank r.
BetaTestResult test_beta_restriction(const JohansenDecomposition& moments, std::size_t r,
                                     const BetaRestriction& restriction);

}  // namespace svecm
