#pragma once

#include "svecm/dataset.hpp"

#include <armadillo>

#include <cstdint>

namespace svecm {

/// Structural shock order used for B, Xi B and every shock-indexed output.
enum ShockIndex : arma::uword { kShockPrice = 0, kShockSupply = 1, kShockWage = 2, kShockDemand = 3, kShockLabor = 4 };

inline const std::vector<std::string> kShockNames = {"eps_p", "eps_s", "eps_w", "eps_d", "eps_l"};

/**
 * WS-PS labor-market parameters.
 *
 * wage_reversion (kappa) controls how wage shocks reach the levels. With
 * kappa = 0 every shock is cumulated one-for-one, so all five are permanent
 * and the system has no cointegration. With 0 < kappa < 1 the wage shock
 * drives a state z_t = (1 - kappa) z_{t-1} + eps_w whose impact on the
 * increments is unchanged but whose long-run effect on every level is zero.
 * The levels then follow a VECM(1) with one cointegration relation.
 */
struct WsPsParams {
    double phi = 0.5;      // demand elasticity
    double a = 0.1;        // production shift
    double alpha_l = 0.2;  // labor-supply wage elasticity
    double b = 0.5;        // discouragement
    double gamma1 = 0.3;   // indexation on demand
    double gamma2 = 0.2;   // indexation on prices
    double lambda = 0.0;   // hysteresis; 0 is total hysteresis
    double wage_reversion = 0.1;

    /// (1 + b - lambda) / (1 + b); equals 1 iff lambda = 0.
    [[nodiscard]] double rho() const { return (1.0 + b - lambda) / (1.0 + b); }
    /// Throws InvalidParams.
    void validate() const;
};

struct ShockSigmas {
    double d = 0.1;
    double s = 0.1;
    double p = 0.1;
    double w = 0.1;
    double l = 0.1;

    /// In ShockIndex order.
    [[nodiscard]] arma::vec in_shock_order() const { return {p, s, w, d, l}; }
};

struct ShockSequence {
    arma::vec eps_d;
    arma::vec eps_s;
    arma::vec eps_p;
    arma::vec eps_w;
    arma::vec eps_l;
    ShockSigmas sigmas;
    std::uint64_t seed = 0;

    [[nodiscard]] arma::uword length() const { return eps_s.n_elem; }
    /// T x 5 in ShockIndex order.
    [[nodiscard]] arma::mat as_matrix() const;
};

/// Normal innovations scaled by sigmas. Each period draws d, s, p, w, l in
/// that order from one Rng stream.
ShockSequence draw_shocks(arma::uword T, const ShockSigmas& sigmas, std::uint64_t seed);

/// Unit-coefficient increment map: row i, column j is the response of the
/// increment of system variable i to a unit shock j (rows p, y-n, w-p, n, u).
arma::mat increment_coefficients(const WsPsParams& params);

/// True contemporaneous impact matrix: increment_coefficients * diag(sigmas).
arma::mat impact_matrix(const WsPsParams& params, const ShockSigmas& sigmas);

/// True long-run impact on levels (lambda = 0): the impact matrix with the
/// wage column set to zero when wage_reversion > 0.
arma::mat long_run_impact(const WsPsParams& params, const ShockSigmas& sigmas);

/// Cointegration vector spanning the left null space of the permanent
/// columns, normalized so the (w-p) coefficient is one.
arma::vec true_beta(const WsPsParams& params);

/**
 * Levels of (p, y-n, w-p, n, u) starting at initial_levels (one row per
 * shock period, preceded by the initial row; T + 1 rows in total).
 * Years run from first_year.
 */
TimePanel simulate(const WsPsParams& params, const ShockSequence& shocks, const arma::vec& initial_levels,
                   int first_year = 1960);

/// Increments of y, n, w, p, u implied by the shocks (T x 5, columns in
/// that order). The wage shock enters through its effective increment
/// eps_w - kappa z_{t-1}.
arma::mat reconstruct_output_wage(const WsPsParams& params, const ShockSequence& shocks);

/// Raw positive levels (output, employment, wage, price, unemployment) whose
/// build_system image is the simulated system.
TimePanel raw_levels(const TimePanel& system);

/// Variance shares of du from the impact coefficients, in ShockIndex order:
/// share_j = (c_j sigma_j)^2 / sum_k (c_k sigma_k)^2. Throws AllZeroCoefficients.
arma::vec analytic_fevd_u(const WsPsParams& params, const ShockSigmas& sigmas);

}  // namespace svecm
