#pragma once

#include "svecm/vecm.hpp"

#include <armadillo>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svecm {

/**
 * Zero restrictions on the impact matrix B and the long-run impact Xi B.
 * Entries equal to 1 in a mask are restricted to zero. Rows follow the
 * system variables, columns the structural shocks.
 */
struct RestrictionPattern {
    arma::umat b_zero;
    arma::umat xi_b_zero;
    std::vector<std::string> shock_names;
    /// Per shock, the variable whose response is made positive. Empty means:
    /// the diagonal entry where B is free there, else the first nonzero entry.
    std::vector<arma::uword> sign_rows;

    [[nodiscard]] arma::uword n_vars() const { return b_zero.n_rows; }
    [[nodiscard]] arma::uword n_zeros() const { return arma::accu(b_zero) + arma::accu(xi_b_zero); }
    /// Columns of xi_b_zero that are entirely zero (transitory shocks).
    [[nodiscard]] std::vector<arma::uword> transitory_shocks() const;
    /// Throws InvalidArgument on malformed masks.
    void validate() const;

    /// B free; Xi B zero where a permanent shock cannot move a variable in
    /// the wage-price system, with eps_w the single transitory shock.
    static RestrictionPattern default_wage_price();
    /// Nothing restricted.
    static RestrictionPattern unrestricted(arma::uword K);
};

struct RestrictionCount {
    arma::uword total_required = 0;     // K(K-1)/2 beyond BB' = Sigma
    arma::uword from_transitory = 0;    // r(K-r) from the zero columns of Xi B
    arma::uword extra_permanent = 0;    // (K-r)(K-r-1)/2
    arma::uword extra_transitory = 0;   // r(r-1)/2
};

/// Throws InvalidRank unless 1 <= r < K.
RestrictionCount count_restrictions(arma::uword K, arma::uword r);

/// Xi = beta_perp (alpha_perp' (I - sum Gamma_i) beta_perp)^{-1} alpha_perp'.
/// Throws NonInvertibleCore when the core matrix is singular.
arma::mat long_run_multiplier(const VecmModel& model);

enum class IdentificationStatus { Exactly, Over, Under };

struct IdentificationReport {
    IdentificationStatus status = IdentificationStatus::Under;
    arma::uword jacobian_rank = 0;        // maximum over the evaluation points
    arma::uword n_params = 0;             // K^2
    arma::uword n_covariance_eqs = 0;     // K(K+1)/2
    arma::uword n_zeros = 0;              // restricted entries as written
    arma::uword n_independent = 0;        // rank of the stacked constraints
    arma::uword required = 0;             // K(K-1)/2

    [[nodiscard]] std::string summary() const;
};

std::string_view to_string(IdentificationStatus status) noexcept;

/// Linear constraints R vec(B) = 0 implied by the pattern, given Xi.
arma::mat constraint_matrix(const RestrictionPattern& pattern, const arma::mat& xi);

/**
 * Rank of the Jacobian of [vech(BB' - Sigma); R vec(B)] with respect to
 * vec(B), evaluated at 20 random points satisfying the constraints. Under
 * when the rank stays below K^2 at every point; otherwise exactly or over
 * identified by comparing K(K+1)/2 + rank(R) with K^2.
 */
IdentificationReport check_identification(const RestrictionPattern& pattern, const VecmModel& model,
                                          std::uint64_t seed = 20240917);

struct IdentifyOptions {
    int max_iter = 500;
    double tol = 1e-10;
    int restarts = 10;
    std::uint64_t seed = 1;
    std::optional<arma::mat> start;  // used for the first attempt
    bool check = true;               // run check_identification first
};

struct SvecModel {
    arma::mat b;
    arma::mat xi;
    arma::mat xi_b;
    double loglik = 0.0;
    bool converged = false;
    int iterations = 0;       // of the accepted attempt
    int attempts = 0;
    double gradient_norm = 0.0;
    RestrictionPattern pattern;
    std::optional<IdentificationReport> identification;
    arma::mat tvalues_b;      // filled by bootstrap_tvalues
    arma::mat tvalues_xi_b;
};

/// Gaussian log-likelihood of u_t = B eps_t at the residual covariance,
/// -T/2 (K ln 2pi + ln det(BB') + tr((BB')^{-1} Sigma)).
double structural_loglik(const arma::mat& B, const arma::mat& sigma, arma::uword n_obs);

/**
 * Restricted ML estimate of B by scoring over vec(B) = S gamma, S a basis
 * of the constraint null space. Attempts start from chol(Sigma) Q with Q a
 * random orthogonal matrix; the search stops at the first attempt whose B
 * reproduces Sigma, otherwise the best converged attempt is kept.
 * Throws NotIdentified or NoConvergence.
 */
SvecModel identify(const VecmModel& model, const RestrictionPattern& pattern, const IdentifyOptions& options = {});

struct BootstrapOptions {
    int reps = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;        // 0: hardware concurrency
    double max_fail_share = 0.2;
    int restarts = 3;
};

struct BootstrapResult {
    arma::mat tvalues_b;
    arma::mat tvalues_xi_b;
    arma::mat sd_b;
    arma::mat sd_xi_b;
    int reps = 0;
    int failed = 0;
};

/**
 * Recursive-design residual bootstrap with beta fixed at its estimate.
 * Centered residuals are resampled, pseudo samples are rebuilt through the
 * level VAR from the observed initial values, the VECM is re-estimated and
 * B re-identified from the point estimate with column signs aligned to it.
 * t = estimate / bootstrap standard deviation; restricted entries get 0.
 * Each replication has its own seed and stores its draw, so the result does
 * not depend on the thread count. Throws BootstrapFailure.
 */
BootstrapResult bootstrap_tvalues(const VecmModel& model, const SvecModel& svec, const BootstrapOptions& options);

}  // namespace svecm
