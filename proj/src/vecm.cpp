#include "svecm/vecm.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"

namespace svecm {

arma::mat VecmModel::beta_extended() const {
    if (deterministic == Deterministic::RestrictedConstant) {
        return arma::join_cols(beta, beta_const);
    }
    return beta;
}

namespace {

void check_rank(std::size_t r, std::size_t K) {
    if (r < 1 || r >= K) {
        throw Error(ErrorCode::RankOutOfRange,
                    "rank " + std::to_string(r) + " outside 1.." + std::to_string(K - 1) +
                        " (rank 0 calls for a VAR in differences)");
    }
}

}  // namespace

VecmModel fit_vecm_given_beta(const TimePanel& panel, std::size_t p, Deterministic det, const arma::mat& beta_ext) {
    const std::size_t K = panel.n_vars();
    const std::size_t r = beta_ext.n_cols;
    check_rank(r, K);
    const std::size_t expected_rows = det == Deterministic::RestrictedConstant ? K + 1 : K;
    if (beta_ext.n_rows != expected_rows) {
        throw Error(ErrorCode::InvalidArgument, "beta has the wrong number of rows");
    }
    if (p < 1 || panel.n_obs() <= p + K * p + 1) {
        throw Error(ErrorCode::TooShort, "sample too short for the VECM");
    }

    const VecmDesign d = make_design(panel.values, p, det);
    const arma::mat regressors = arma::join_rows(d.Z1 * beta_ext, d.Z2);
    OlsFit fit;
    try {
        fit = ols(regressors, d.Z0);
    } catch (const Error& e) {
        throw Error(ErrorCode::SingularDesign, e.what());
    }

    VecmModel m;
    m.deterministic = det;
    m.p = p;
    m.r = r;
    m.n_obs = d.Z0.n_rows;
    m.beta = beta_ext.rows(0, K - 1);
    if (det == Deterministic::RestrictedConstant) {
        m.beta_const = beta_ext.row(K);
    }
    m.alpha = fit.coef.rows(0, r - 1).t();
    for (std::size_t j = 1; j < p; ++j) {
        m.gammas.push_back(fit.coef.rows(r + (j - 1) * K, r + j * K - 1).t());
    }
    m.intercept = arma::zeros(K);
    if (det == Deterministic::UnrestrictedConstant) {
        m.intercept = fit.coef.row(fit.coef.n_rows - 1).t();
    } else if (det == Deterministic::RestrictedConstant) {
        m.intercept = m.alpha * m.beta_const.t();
    }
    m.residuals = fit.residuals;
    m.sigma = fit.residuals.t() * fit.residuals / static_cast<double>(m.n_obs);
    m.sigma = 0.5 * (m.sigma + m.sigma.t());
    m.data = panel;

    const arma::vec ev = arma::eig_sym(m.sigma);
    if (ev.min() <= 1e-12 * ev.max()) {
        throw Error(ErrorCode::SingularDesign, "residual covariance is not positive definite");
    }
    return m;
}

VecmModel fit_vecm(const TimePanel& panel, std::size_t p, std::size_t r, Deterministic det,
                   const std::optional<BetaRestriction>& restriction) {
    const std::size_t K = panel.n_vars();
    check_rank(r, K);
    JohansenDecomposition moments = johansen_decomposition(panel.values, p, det);

    arma::mat beta_ext;
    if (restriction) {
        if (restriction->H.n_rows != K || restriction->H.n_cols < r) {
            throw Error(ErrorCode::InconsistentRestriction, "restriction incompatible with rank " + std::to_string(r));
        }
        beta_ext = solve_reduced_rank(moments, restriction->H).vectors.cols(0, r - 1);
    } else {
        beta_ext = moments.eigenvectors.cols(0, r - 1);
    }
    const arma::mat beta_levels = beta_ext.rows(0, K - 1);
    const arma::mat normalized = normalize_beta(beta_levels);
    const arma::mat transform = arma::solve(beta_levels, normalized);
    beta_ext = beta_ext * transform;
    beta_ext.rows(0, K - 1) = normalized;

    VecmModel m = fit_vecm_given_beta(panel, p, det, beta_ext);
    m.johansen = std::move(moments);
    return m;
}

std::vector<arma::mat> to_level_var(const VecmModel& model) {
    const std::size_t K = model.n_vars();
    if (K == 0) {
        throw Error(ErrorCode::NotEstimated, "model has not been fitted");
    }
    const arma::mat I = arma::eye(K, K);
    const std::size_t p = model.p;
    std::vector<arma::mat> A(p);
    if (p == 1) {
        A[0] = I + model.pi();
        return A;
    }
    A[0] = I + model.pi() + model.gammas[0];
    for (std::size_t j = 1; j + 1 < p; ++j) {
        A[j] = model.gammas[j] - model.gammas[j - 1];
    }
    A[p - 1] = -model.gammas[p - 2];
    return A;
}

arma::mat simulate_level_var(const std::vector<arma::mat>& A, const arma::vec& intercept, const arma::mat& initial,
                             const arma::mat& innovations) {
    const std::size_t p = A.size();
    const std::size_t K = initial.n_cols;
    if (initial.n_rows != p || innovations.n_cols != K) {
        throw Error(ErrorCode::InvalidArgument, "initial values must have p rows and K columns");
    }
    arma::mat X(p + innovations.n_rows, K);
    X.rows(0, p - 1) = initial;
    for (std::size_t t = p; t < X.n_rows; ++t) {
        arma::vec x = intercept + innovations.row(t - p).t();
        for (std::size_t j = 1; j <= p; ++j) {
            x += A[j - 1] * X.row(t - j).t();
        }
        X.row(t) = x.t();
    }
    return X;
}

BetaTestResult test_beta_restriction(const VecmModel& model, const BetaRestriction& restriction) {
    if (model.johansen.eigenvalues.is_empty()) {
        throw Error(ErrorCode::NotEstimated, "model carries no Johansen decomposition");
    }
    return test_beta_restriction(model.johansen, model.r, restriction);
}

}  // namespace svecm
