#include "svecm/wsps.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"
#include "svecm/rng.hpp"

#include <cmath>

namespace svecm {

void WsPsParams::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidParams, what); };
    const bool finite = std::isfinite(phi) && std::isfinite(a) && std::isfinite(alpha_l) && std::isfinite(b) &&
                        std::isfinite(gamma1) && std::isfinite(gamma2) && std::isfinite(lambda) &&
                        std::isfinite(wage_reversion);
    if (!finite) fail("parameters must be finite");
    if (phi <= 0.0) fail("phi must be positive");
    if (alpha_l <= 0.0) fail("alpha must be positive");
    if (b <= 0.0) fail("b must be positive");
    if (gamma1 < 0.0 || gamma1 > 1.0) fail("gamma1 must lie in [0, 1]");
    if (gamma2 < 0.0 || gamma2 > 1.0) fail("gamma2 must lie in [0, 1]");
    if (lambda < 0.0 || lambda > 1.0) fail("lambda must lie in [0, 1]");
    if (wage_reversion < 0.0 || wage_reversion >= 1.0) fail("wage_reversion must lie in [0, 1)");
}

arma::mat ShockSequence::as_matrix() const {
    return arma::join_rows(arma::join_rows(eps_p, eps_s, eps_w, eps_d), eps_l);
}

ShockSequence draw_shocks(arma::uword T, const ShockSigmas& sigmas, std::uint64_t seed) {
    for (double s : {sigmas.d, sigmas.s, sigmas.p, sigmas.w, sigmas.l}) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw Error(ErrorCode::InvalidParams, "shock standard deviations must be finite and non-negative");
        }
    }
    ShockSequence out;
    out.sigmas = sigmas;
    out.seed = seed;
    out.eps_d.set_size(T);
    out.eps_s.set_size(T);
    out.eps_p.set_size(T);
    out.eps_w.set_size(T);
    out.eps_l.set_size(T);
    Rng rng(seed);
    for (arma::uword t = 0; t < T; ++t) {
        out.eps_d(t) = sigmas.d * rng.normal();
        out.eps_s(t) = sigmas.s * rng.normal();
        out.eps_p(t) = sigmas.p * rng.normal();
        out.eps_w(t) = sigmas.w * rng.normal();
        out.eps_l(t) = sigmas.l * rng.normal();
    }
    return out;
}

arma::mat increment_coefficients(const WsPsParams& q) {
    q.validate();
    const double phi = q.phi;
    const double g1 = q.gamma1;
    const double g2 = q.gamma2;
    const double inv = 1.0 / (1.0 + q.b);
    arma::mat M(5, 5, arma::fill::zeros);
    // columns: eps_p, eps_s, eps_w, eps_d, eps_l
    M(kPrice, kShockPrice) = 1.0 + g2;
    M(kPrice, kShockSupply) = -1.0;
    M(kPrice, kShockWage) = 1.0;
    M(kPrice, kShockDemand) = g1;

    M(kProductivity, kShockSupply) = 1.0;

    M(kRealWage, kShockPrice) = -1.0;
    M(kRealWage, kShockSupply) = 1.0;

    M(kEmployment, kShockPrice) = -phi * (1.0 + g2);
    M(kEmployment, kShockSupply) = phi + q.a - 1.0;
    M(kEmployment, kShockWage) = -phi;
    M(kEmployment, kShockDemand) = phi * (1.0 - g1);

    M(kUnemployment, kShockPrice) = inv * (phi * (1.0 + g2) - q.alpha_l);
    M(kUnemployment, kShockSupply) = -inv * (phi + q.a + q.alpha_l - 1.0);
    M(kUnemployment, kShockWage) = inv * phi;
    M(kUnemployment, kShockDemand) = -inv * phi * (1.0 - g1);
    M(kUnemployment, kShockLabor) = inv;
    return M;
}

arma::mat impact_matrix(const WsPsParams& params, const ShockSigmas& sigmas) {
    return increment_coefficients(params) * arma::diagmat(sigmas.in_shock_order());
}

arma::mat long_run_impact(const WsPsParams& params, const ShockSigmas& sigmas) {
    arma::mat L = impact_matrix(params, sigmas);
    if (params.wage_reversion > 0.0) {
        L.col(kShockWage).zeros();
    }
    return L;
}

arma::vec true_beta(const WsPsParams& params) {
    if (params.wage_reversion <= 0.0) {
        throw Error(ErrorCode::InvalidParams, "no cointegration when wage_reversion = 0");
    }
    arma::mat permanent = increment_coefficients(params);
    permanent.shed_col(kShockWage);
    if (numerical_rank(permanent) != 4) {
        throw Error(ErrorCode::InvalidParams, "permanent shocks are collinear");
    }
    arma::vec beta = null_space(permanent.t(), 5).col(0);
    if (std::abs(beta(kRealWage)) < 1e-12) {
        throw Error(ErrorCode::InvalidParams, "cointegration vector has no real-wage component");
    }
    return beta / beta(kRealWage);
}

namespace {

// Increments of the system variables before the hysteresis filter, and the
// effective wage shock eps_w - kappa z_{t-1}.
struct Increments {
    arma::mat dx;         // T x 5, system order
    arma::vec eff_wage;   // T
};

Increments system_increments(const WsPsParams& params, const ShockSequence& shocks) {
    const arma::mat M = increment_coefficients(params);
    const arma::mat E = shocks.as_matrix();
    const double kappa = params.wage_reversion;
    Increments out;
    out.eff_wage.set_size(E.n_rows);
    double z = 0.0;
    for (arma::uword t = 0; t < E.n_rows; ++t) {
        out.eff_wage(t) = E(t, kShockWage) - kappa * z;
        z = (1.0 - kappa) * z + E(t, kShockWage);
    }
    arma::mat Eeff = E;
    Eeff.col(kShockWage) = out.eff_wage;
    out.dx = Eeff * M.t();
    return out;
}

}  // namespace

TimePanel simulate(const WsPsParams& params, const ShockSequence& shocks, const arma::vec& initial_levels,
                   int first_year) {
    params.validate();
    if (initial_levels.n_elem != 5) {
        throw Error(ErrorCode::InvalidArgument, "initial_levels must have 5 entries");
    }
    const Increments inc = system_increments(params, shocks);
    const arma::uword T = inc.dx.n_rows;
    const double rho = params.rho();
    const double u0 = initial_levels(kUnemployment);

    TimePanel panel;
    panel.names = kSystemColumns;
    panel.values.set_size(T + 1, 5);
    panel.values.row(0) = initial_levels.t();
    for (arma::uword t = 1; t <= T; ++t) {
        panel.values.row(t) = panel.values.row(t - 1) + inc.dx.row(t - 1);
        // Partial hysteresis pulls u back toward u0; rho = 1 leaves the sum intact.
        panel.values(t, kUnemployment) = u0 + rho * (panel.values(t - 1, kUnemployment) - u0) +
                                         inc.dx(t - 1, kUnemployment);
    }
    panel.years.resize(T + 1);
    for (arma::uword t = 0; t <= T; ++t) {
        panel.years[t] = first_year + static_cast<int>(t);
    }
    return panel;
}

arma::mat reconstruct_output_wage(const WsPsParams& params, const ShockSequence& shocks) {
    params.validate();
    const Increments inc = system_increments(params, shocks);
    const arma::vec dp = inc.dx.col(kPrice);
    const arma::vec dn = inc.dx.col(kEmployment);
    arma::mat out(inc.dx.n_rows, 5);
    out.col(0) = dn + shocks.eps_s;                 // dy
    out.col(1) = dn;                                // dn
    out.col(2) = dp + shocks.eps_s - shocks.eps_p;  // dw
    out.col(3) = dp;                                // dp
    out.col(4) = inc.dx.col(kUnemployment);         // du
    return out;
}

TimePanel raw_levels(const TimePanel& system) {
    if (system.n_vars() != 5) {
        throw Error(ErrorCode::InvalidArgument, "expected the five-column system");
    }
    const arma::mat& v = system.values;
    TimePanel raw;
    raw.names = {"output", "employment", "wage", "price", "unemployment"};
    raw.years = system.years;
    raw.values.set_size(v.n_rows, 5);
    raw.values.col(0) = arma::exp(v.col(kProductivity) + v.col(kEmployment));
    raw.values.col(1) = arma::exp(v.col(kEmployment));
    raw.values.col(2) = arma::exp(v.col(kRealWage) + v.col(kPrice));
    raw.values.col(3) = arma::exp(v.col(kPrice));
    raw.values.col(4) = v.col(kUnemployment);
    return raw;
}

arma::vec analytic_fevd_u(const WsPsParams& params, const ShockSigmas& sigmas) {
    const arma::rowvec c = impact_matrix(params, sigmas).row(kUnemployment);
    const arma::vec sq = arma::square(c.t());
    const double total = arma::accu(sq);
    if (total <= 0.0) {
        throw Error(ErrorCode::AllZeroCoefficients, "unemployment responds to no shock");
    }
    return sq / total;
}

}  // namespace svecm
