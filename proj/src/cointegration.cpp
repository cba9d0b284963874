#include "svecm/cointegration.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>

namespace svecm {

namespace {

constexpr std::size_t kTableSize = 10;

// Trace test, unrestricted constant. K-r = 2..5 are the fixed reference values
// for the five-variable system; the remaining rows are Osterwald-Lenum (1992), Table 1.
constexpr CriticalPair kTraceUnrestricted[kTableSize] = {
    {3.76, 6.65},     {15.41, 19.62},   {29.80, 35.21},   {47.71, 54.23},   {69.61, 77.29},
    {94.15, 103.18},  {124.24, 133.57}, {156.00, 168.36}, {192.89, 204.95}, {233.13, 247.18},
};

// Trace test, constant restricted to the cointegration space:
// Osterwald-Lenum (1992), Table 1*.
constexpr CriticalPair kTraceRestricted[kTableSize] = {
    {9.24, 12.97},    {19.96, 24.60},   {34.91, 41.07},   {53.12, 60.16},   {76.07, 84.45},
    {102.14, 111.01}, {131.70, 143.09}, {165.58, 177.20}, {202.92, 215.74}, {244.15, 257.68},
};

// Trace test without deterministic terms; asymptotic quantiles simulated with
// T = 1000 and 20000 replications.
constexpr CriticalPair kTraceNone[kTableSize] = {
    {4.13, 6.87},     {12.18, 16.22},   {24.37, 29.80},   {40.24, 46.54},   {60.31, 67.51},
    {84.19, 93.01},   {112.16, 122.14}, {144.40, 155.33}, {179.90, 192.29}, {220.94, 234.11},
};

// S&L test with an intercept. K-r = 2..5 are the fixed reference values; the other
// rows use the no-deterministic-term asymptotics, which the GLS-adjusted
// statistic shares.
constexpr CriticalPair kSaikkonenLutkepohl[kTableSize] = {
    {4.13, 6.87},     {9.84, 13.48},    {20.96, 25.71},   {35.76, 41.58},   {54.59, 61.53},
    {84.19, 93.01},   {112.16, 122.14}, {144.40, 155.33}, {179.90, 192.29}, {220.94, 234.11},
};

const CriticalPair& table_lookup(const CriticalPair (&table)[kTableSize], std::size_t k_minus_r) {
    if (k_minus_r < 1 || k_minus_r > kTableSize) {
        throw Error(ErrorCode::OutOfTable, "K - r = " + std::to_string(k_minus_r) + " outside 1..10");
    }
    return table[k_minus_r - 1];
}

arma::mat chol_lower(const arma::mat& S, const char* what) {
    arma::mat L;
    const arma::mat sym = 0.5 * (S + S.t());
    if (!arma::chol(L, sym, "lower")) {
        throw Error(ErrorCode::SingularMoments, std::string(what) + " is not positive definite");
    }
    return L;
}

void check_sample(std::size_t T, std::size_t p, std::size_t K) {
    if (p < 1) {
        throw Error(ErrorCode::InvalidArgument, "lag order p must be at least 1");
    }
    if (T <= p || T - p <= 2 * K) {
        throw Error(ErrorCode::TooShort, "T - p must exceed 2K (T=" + std::to_string(T) + ", p=" +
                                             std::to_string(p) + ", K=" + std::to_string(K) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> lag_criteria(const TimePanel& panel, std::size_t max_p, InfoCriterion criterion) {
    const arma::mat& X = panel.values;
    const std::size_t T = X.n_rows;
    const std::size_t K = X.n_cols;
    if (max_p < 1) {
        throw Error(ErrorCode::InvalidArgument, "max_p must be at least 1");
    }
    if (T <= max_p * K + 1 || T - max_p * K - 1 <= K) {
        throw Error(ErrorCode::TooShort, "sample too short for max_p = " + std::to_string(max_p));
    }
    const std::size_t n = T - max_p;
    const arma::mat Y = X.rows(max_p, T - 1);
    std::vector<double> values;
    for (std::size_t p = 1; p <= max_p; ++p) {
        arma::mat Z(n, 1 + p * K);
        Z.col(0).ones();
        for (std::size_t j = 1; j <= p; ++j) {
            Z.cols(1 + (j - 1) * K, j * K) = X.rows(max_p - j, T - 1 - j);
        }
        const OlsFit fit = ols(Z, Y);
        const arma::mat sigma = fit.residuals.t() * fit.residuals / static_cast<double>(n);
        double log_det = 0.0;
        double sign = 0.0;
        arma::log_det(log_det, sign, sigma);
        if (sign <= 0.0) {
            throw Error(ErrorCode::SingularRegression, "residual covariance is singular");
        }
        const double nn = static_cast<double>(n);
        const double n_params = static_cast<double>(p * K * K);
        double penalty = 0.0;
        switch (criterion) {
            case InfoCriterion::Aic: penalty = 2.0 * n_params / nn; break;
            case InfoCriterion::Sc: penalty = std::log(nn) * n_params / nn; break;
            case InfoCriterion::Hq: penalty = 2.0 * std::log(std::log(nn)) * n_params / nn; break;
        }
        values.push_back(log_det + penalty);
    }
    return values;
}

std::size_t select_lag(const TimePanel& panel, std::size_t max_p, InfoCriterion criterion) {
    const auto values = lag_criteria(panel, max_p, criterion);
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) {
            best = i;
        }
    }
    return best + 1;
}

// ---------------------------------------------------------------------------

VecmDesign make_design(const arma::mat& levels, std::size_t p, Deterministic det) {
    const std::size_t T = levels.n_rows;
    const std::size_t K = levels.n_cols;
    const std::size_t n = T - p;
    const arma::mat dX = diff_rows(levels);  // dX.row(i) = X_{i+1} - X_i

    VecmDesign d;
    d.Z0 = dX.rows(p - 1, T - 2);
    d.Z1 = levels.rows(p - 1, T - 2);
    const std::size_t n_lag_cols = (p - 1) * K;
    d.Z2.set_size(n, n_lag_cols);
    for (std::size_t j = 1; j < p; ++j) {
        d.Z2.cols((j - 1) * K, j * K - 1) = dX.rows(p - 1 - j, T - 2 - j);
    }
    if (det == Deterministic::RestrictedConstant) {
        d.Z1 = arma::join_rows(d.Z1, arma::ones(n));
    } else if (det == Deterministic::UnrestrictedConstant) {
        d.Z2 = arma::join_rows(d.Z2, arma::ones(n));
    }
    return d;
}

ReducedRankSolution solve_reduced_rank(const JohansenDecomposition& m, const arma::mat& H) {
    const std::size_t K = m.n_vars;
    if (H.n_rows != K) {
        throw Error(ErrorCode::InconsistentRestriction, "H must have K rows");
    }
    arma::mat H_ext = H;
    if (m.S11.n_rows == K + 1) {
        H_ext = arma::zeros(K + 1, H.n_cols + 1);
        H_ext.submat(0, 0, K - 1, H.n_cols - 1) = H;
        H_ext(K, H.n_cols) = 1.0;
    }
    const arma::mat A = H_ext.t() * m.S11 * H_ext;
    const arma::mat L = chol_lower(A, "H'S11H");
    const arma::mat M = chol_lower(m.S00, "S00");
    const arma::mat HS10 = H_ext.t() * m.S01.t();
    // G = L^{-1} H'S10 M^{-T}
    const arma::mat LinvB = arma::solve(arma::trimatl(L), HS10);
    const arma::mat G = arma::solve(arma::trimatl(M), LinvB.t()).t();
    arma::mat C = G * G.t();
    C = 0.5 * (C + C.t());

    arma::vec eigval;
    arma::mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, C)) {
        throw Error(ErrorCode::SingularMoments, "eigen-decomposition failed");
    }
    const std::size_t n_keep = std::min<std::size_t>(K, eigval.n_elem);
    ReducedRankSolution sol;
    sol.eigenvalues.set_size(n_keep);
    arma::mat V(eigvec.n_rows, n_keep);
    for (std::size_t i = 0; i < n_keep; ++i) {
        const std::size_t src = eigval.n_elem - 1 - i;
        sol.eigenvalues(i) = std::max(0.0, eigval(src));
        V.col(i) = eigvec.col(src);
    }
    sol.vectors = H_ext * arma::solve(arma::trimatu(L.t()), V);
    return sol;
}

arma::mat normalize_beta(const arma::mat& beta) {
    const std::size_t r = beta.n_cols;
    if (r == 0) {
        return beta;
    }
    std::vector<arma::uword> pivots;
    const double scale = arma::abs(beta).max();
    for (arma::uword i = 0; i < beta.n_rows && pivots.size() < r; ++i) {
        std::vector<arma::uword> trial = pivots;
        trial.push_back(i);
        const arma::mat block = beta.rows(arma::uvec(trial));
        if (numerical_rank(block, 1e-9) == trial.size() && arma::abs(block).max() > 1e-12 * scale) {
            pivots = std::move(trial);
        }
    }
    if (pivots.size() < r) {
        throw Error(ErrorCode::InconsistentRestriction, "beta does not have full column rank");
    }
    const arma::mat block = beta.rows(arma::uvec(pivots));
    return beta * arma::inv(block);
}

// ---------------------------------------------------------------------------

CriticalPair trace_critical_values(std::size_t k_minus_r, Deterministic det) {
    switch (det) {
        case Deterministic::UnrestrictedConstant: return table_lookup(kTraceUnrestricted, k_minus_r);
        case Deterministic::RestrictedConstant: return table_lookup(kTraceRestricted, k_minus_r);
        case Deterministic::None: return table_lookup(kTraceNone, k_minus_r);
    }
    return table_lookup(kTraceUnrestricted, k_minus_r);
}

CriticalPair sl_critical_values(std::size_t k_minus_r) {
    return table_lookup(kSaikkonenLutkepohl, k_minus_r);
}

std::size_t decide_rank(std::span<const double> stats, std::span<const CriticalPair> critical, Significance level) {
    if (stats.size() != critical.size()) {
        throw Error(ErrorCode::InvalidArgument, "statistic and critical value counts differ");
    }
    for (std::size_t r = 0; r < stats.size(); ++r) {
        if (stats[r] < critical[r].at(level)) {
            return r;
        }
    }
    return stats.size();
}

JohansenDecomposition johansen_decomposition(const arma::mat& levels, std::size_t p, Deterministic det) {
    const std::size_t K = levels.n_cols;
    check_sample(levels.n_rows, p, K);
    const VecmDesign d = make_design(levels, p, det);
    const arma::mat R0 = partial_out(d.Z0, d.Z2);
    const arma::mat R1 = partial_out(d.Z1, d.Z2);
    const double n = static_cast<double>(d.Z0.n_rows);

    JohansenDecomposition m;
    m.deterministic = det;
    m.p = p;
    m.n_obs = d.Z0.n_rows;
    m.n_vars = K;
    m.S00 = R0.t() * R0 / n;
    m.S01 = R0.t() * R1 / n;
    m.S11 = R1.t() * R1 / n;
    const ReducedRankSolution sol = solve_reduced_rank(m, arma::eye(K, K));
    m.eigenvalues = sol.eigenvalues;
    m.eigenvectors = sol.vectors;
    return m;
}

namespace {

std::vector<double> trace_from_eigenvalues(const arma::vec& eigenvalues, std::size_t n_obs) {
    const std::size_t K = eigenvalues.n_elem;
    std::vector<double> stats(K, 0.0);
    double acc = 0.0;
    for (std::size_t i = K; i-- > 0;) {
        acc += -static_cast<double>(n_obs) * std::log(1.0 - eigenvalues(i));
        stats[i] = acc;
    }
    return stats;
}

}  // namespace

JohansenResult johansen(const TimePanel& panel, std::size_t p, Deterministic det) {
    JohansenResult out;
    out.decomposition = johansen_decomposition(panel.values, p, det);
    const std::size_t K = panel.n_vars();
    auto& test = out.test;
    test.eigenvalues = out.decomposition.eigenvalues;
    test.trace_stats = trace_from_eigenvalues(test.eigenvalues, out.decomposition.n_obs);
    for (std::size_t r = 0; r < K; ++r) {
        test.trace_critical.push_back(trace_critical_values(K - r, det));
    }
    const SlTestResult sl = sl_test(panel, p);
    test.sl_stats = sl.stats;
    test.sl_critical = sl.critical;
    test.rank_five = decide_rank(test.trace_stats, test.trace_critical, Significance::FivePercent);
    test.rank_one = decide_rank(test.trace_stats, test.trace_critical, Significance::OnePercent);
    return out;
}

SlTestResult sl_test(const TimePanel& panel, std::size_t p) {
    const arma::mat& Y = panel.values;
    const std::size_t T = Y.n_rows;
    const std::size_t K = Y.n_cols;
    check_sample(T, p, K);

    const JohansenDecomposition restricted = johansen_decomposition(Y, p, Deterministic::RestrictedConstant);
    const VecmDesign d = make_design(Y, p, Deterministic::RestrictedConstant);
    const double n = static_cast<double>(d.Z0.n_rows);

    SlTestResult out;
    for (std::size_t r = 0; r < K; ++r) {
        // Step 1: VECM with restricted constant at rank r.
        arma::mat regressors = d.Z2;
        arma::mat beta_levels(K, r, arma::fill::zeros);
        if (r > 0) {
            const arma::mat beta_ext = restricted.eigenvectors.cols(0, r - 1);
            beta_levels = beta_ext.rows(0, K - 1);
            regressors = arma::join_rows(d.Z1 * beta_ext, d.Z2);
        }
        arma::mat alpha(K, r, arma::fill::zeros);
        std::vector<arma::mat> gammas;
        arma::mat resid = d.Z0;
        if (regressors.n_cols > 0) {
            const OlsFit fit = ols(regressors, d.Z0);
            resid = fit.residuals;
            if (r > 0) {
                alpha = fit.coef.rows(0, r - 1).t();
            }
            for (std::size_t j = 1; j < p; ++j) {
                gammas.push_back(fit.coef.rows(r + (j - 1) * K, r + j * K - 1).t());
            }
        }
        const arma::mat omega = resid.t() * resid / n;
        arma::mat omega_inv;
        if (!arma::inv_sympd(omega_inv, 0.5 * (omega + omega.t()))) {
            throw Error(ErrorCode::SingularMoments, "S&L residual covariance is singular");
        }

        // Level-VAR coefficients of the fitted VECM.
        const arma::mat I = arma::eye(K, K);
        std::vector<arma::mat> A(p);
        const arma::mat Pi = alpha * beta_levels.t();
        if (p == 1) {
            A[0] = I + Pi;
        } else {
            A[0] = I + Pi + gammas[0];
            for (std::size_t j = 1; j + 1 < p; ++j) {
                A[j] = gammas[j] - gammas[j - 1];
            }
            A[p - 1] = -gammas[p - 2];
        }

        // Step 2: GLS estimate of mu_0 from A(L) y_t = A(L) mu_0 + u_t.
        arma::mat lhs(K, K, arma::fill::zeros);
        arma::vec rhs(K, arma::fill::zeros);
        for (std::size_t t = 0; t < T; ++t) {
            arma::mat a = I;
            arma::vec z = Y.row(t).t();
            for (std::size_t j = 1; j <= std::min(t, p); ++j) {
                a -= A[j - 1];
                z -= A[j - 1] * Y.row(t - j).t();
            }
            lhs += a.t() * omega_inv * a;
            rhs += a.t() * omega_inv * z;
        }
        const arma::vec mu0 = arma::solve(lhs, rhs);

        // Step 3: LR statistic without deterministic terms on the adjusted series.
        const arma::mat adjusted = Y.each_row() - mu0.t();
        const JohansenDecomposition plain = johansen_decomposition(adjusted, p, Deterministic::None);
        double stat = 0.0;
        for (std::size_t i = r; i < K; ++i) {
            stat += -static_cast<double>(plain.n_obs) * std::log(1.0 - plain.eigenvalues(i));
        }
        out.stats.push_back(stat);
        out.critical.push_back(sl_critical_values(K - r));
    }
    return out;
}

// ---------------------------------------------------------------------------

BetaRestriction BetaRestriction::wage_setting() {
    BetaRestriction b;
    b.H = arma::zeros(5, 2);
    b.H(kProductivity, 0) = -1.0;
    b.H(kRealWage, 0) = 1.0;
    b.H(kUnemployment, 1) = 1.0;
    b.description = "wage setting: (w - p) - (y - n) + c*u";
    return b;
}

BetaRestriction BetaRestriction::fixed(const arma::mat& beta) {
    BetaRestriction b;
    b.H = beta;
    b.description = "beta fixed";
    return b;
}

BetaTestResult test_beta_restriction(const JohansenDecomposition& m, std::size_t r,
                                     const BetaRestriction& restriction) {
    const std::size_t K = m.n_vars;
    if (m.eigenvalues.is_empty()) {
        throw Error(ErrorCode::NotEstimated, "no Johansen decomposition available");
    }
    if (r < 1 || r >= K) {
        throw Error(ErrorCode::InconsistentRestriction, "rank must lie in 1..K-1");
    }
    const arma::mat& H = restriction.H;
    if (H.n_rows != K) {
        throw Error(ErrorCode::InconsistentRestriction, "H must have K rows");
    }
    const std::size_t s = H.n_cols;
    if (s < r || numerical_rank(H) != s) {
        throw Error(ErrorCode::InconsistentRestriction, "H must have full column rank s >= r");
    }
    BetaTestResult out;
    if (s == K) {
        // span(H) is everything: nothing is restricted
        out.restricted_eigenvalues = m.eigenvalues;
        out.beta = normalize_beta(m.eigenvectors.submat(0, 0, K - 1, r - 1));
        return out;
    }
    const ReducedRankSolution sol = solve_reduced_rank(m, H);
    out.restricted_eigenvalues = sol.eigenvalues;
    double lr = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        lr += std::log(1.0 - sol.eigenvalues(i)) - std::log(1.0 - m.eigenvalues(i));
    }
    out.lr = static_cast<double>(m.n_obs) * lr;
    out.df = r * (K - s);
    if (out.df > 0) {
        const boost::math::chi_squared dist(static_cast<double>(out.df));
        out.p_value = boost::math::cdf(boost::math::complement(dist, std::max(out.lr, 0.0)));
    }
    out.beta = normalize_beta(sol.vectors.submat(0, 0, K - 1, r - 1));
    return out;
}

}  // namespace svecm
