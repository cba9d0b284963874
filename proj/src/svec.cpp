#include "svecm/svec.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"
#include "svecm/rng.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace svecm {

// ---------------------------------------------------------------------------
// Patterns

std::vector<arma::uword> RestrictionPattern::transitory_shocks() const {
    std::vector<arma::uword> out;
    for (arma::uword j = 0; j < xi_b_zero.n_cols; ++j) {
        if (arma::all(xi_b_zero.col(j) == 1)) {
            out.push_back(j);
        }
    }
    return out;
}

void RestrictionPattern::validate() const {
    const arma::uword K = b_zero.n_rows;
    if (K == 0 || b_zero.n_cols != K || xi_b_zero.n_rows != K || xi_b_zero.n_cols != K) {
        throw Error(ErrorCode::InvalidArgument, "restriction masks must both be K x K");
    }
    if (arma::any(arma::vectorise(b_zero) > 1) || arma::any(arma::vectorise(xi_b_zero) > 1)) {
        throw Error(ErrorCode::InvalidArgument, "mask entries must be 0 (free) or 1 (zero)");
    }
    if (!shock_names.empty() && shock_names.size() != K) {
        throw Error(ErrorCode::InvalidArgument, "need one shock name per column");
    }
    if (!sign_rows.empty()) {
        if (sign_rows.size() != K) {
            throw Error(ErrorCode::InvalidArgument, "need one sign row per shock");
        }
        for (arma::uword j = 0; j < K; ++j) {
            if (sign_rows[j] >= K || b_zero(sign_rows[j], j) == 1) {
                throw Error(ErrorCode::InvalidArgument, "sign row of shock " + std::to_string(j + 1) +
                                                            " must point at a free entry of B");
            }
        }
    }
}

RestrictionPattern RestrictionPattern::default_wage_price() {
    RestrictionPattern p = unrestricted(5);
    p.shock_names = {"eps_p", "eps_s", "eps_w", "eps_d", "eps_l"};
    // rows: p, y-n, w-p, n, u; columns: eps_p, eps_s, eps_w, eps_d, eps_l
    p.xi_b_zero = {
        {0, 0, 1, 0, 1},
        {1, 0, 1, 1, 1},
        {0, 0, 1, 1, 1},
        {0, 0, 1, 0, 0},
        {0, 0, 1, 0, 0},
    };
    // The wage shock has no effect on w-p at impact in the wage-price
    // structure, so its sign is pinned on prices instead of the diagonal.
    p.sign_rows = {0, 1, 0, 3, 4};
    return p;
}

RestrictionPattern RestrictionPattern::unrestricted(arma::uword K) {
    RestrictionPattern p;
    p.b_zero = arma::umat(K, K, arma::fill::zeros);
    p.xi_b_zero = arma::umat(K, K, arma::fill::zeros);
    for (arma::uword j = 0; j < K; ++j) {
        p.shock_names.push_back("eps_" + std::to_string(j + 1));
    }
    return p;
}

RestrictionCount count_restrictions(arma::uword K, arma::uword r) {
    if (r < 1 || r >= K) {
        throw Error(ErrorCode::InvalidRank, "need 1 <= r < K");
    }
    RestrictionCount c;
    c.total_required = K * (K - 1) / 2;
    c.from_transitory = r * (K - r);
    c.extra_permanent = (K - r) * (K - r - 1) / 2;
    c.extra_transitory = r * (r - 1) / 2;
    return c;
}

// ---------------------------------------------------------------------------
// Long-run multiplier

arma::mat long_run_multiplier(const VecmModel& model) {
    const arma::uword K = model.n_vars();
    if (K == 0) {
        throw Error(ErrorCode::NotEstimated, "model has not been fitted");
    }
    arma::mat gamma = arma::eye(K, K);
    for (const auto& g : model.gammas) {
        gamma -= g;
    }
    const arma::mat a_perp = orthogonal_complement(model.alpha);
    const arma::mat b_perp = orthogonal_complement(model.beta);
    const arma::mat core = a_perp.t() * gamma * b_perp;
    if (core.n_rows != core.n_cols || arma::rcond(core) < 1e-12) {
        throw Error(ErrorCode::NonInvertibleCore, "alpha_perp' Gamma beta_perp is singular");
    }
    return b_perp * arma::solve(core, a_perp.t());
}

// ---------------------------------------------------------------------------
// Identification check

std::string_view to_string(IdentificationStatus status) noexcept {
    switch (status) {
        case IdentificationStatus::Exactly: return "exactly identified";
        case IdentificationStatus::Over: return "over-identified";
        case IdentificationStatus::Under: return "under-identified";
    }
    return "unknown";
}

std::string IdentificationReport::summary() const {
    std::ostringstream os;
    os << to_string(status) << ": " << n_zeros << " zero restrictions, " << n_independent
       << " linearly independent, " << required << " required; Jacobian rank " << jacobian_rank << " of "
       << n_params;
    return os.str();
}

arma::mat constraint_matrix(const RestrictionPattern& pattern, const arma::mat& xi) {
    const arma::uword K = pattern.n_vars();
    arma::mat R(pattern.n_zeros(), K * K, arma::fill::zeros);
    arma::uword row = 0;
    for (arma::uword j = 0; j < K; ++j) {
        for (arma::uword i = 0; i < K; ++i) {
            if (pattern.b_zero(i, j) == 1) {
                R(row++, i + j * K) = 1.0;
            }
        }
    }
    for (arma::uword j = 0; j < K; ++j) {
        for (arma::uword i = 0; i < K; ++i) {
            if (pattern.xi_b_zero(i, j) == 1) {
                // (Xi B)_{ij} = Xi_{i,:} B_{:,j}
                R.row(row++).cols(j * K, j * K + K - 1) = xi.row(i);
            }
        }
    }
    return R;
}

namespace {

// d vec(BB') / d vec(B)'
arma::mat covariance_jacobian(const arma::mat& B) {
    const arma::uword K = B.n_rows;
    const arma::mat I = arma::eye(K, K);
    return (arma::eye(K * K, K * K) + commutation(K, K)) * arma::kron(B, I);
}

arma::mat elimination(arma::uword K) {
    arma::mat L(K * (K + 1) / 2, K * K, arma::fill::zeros);
    arma::uword row = 0;
    for (arma::uword j = 0; j < K; ++j) {
        for (arma::uword i = j; i < K; ++i) {
            L(row++, i + j * K) = 1.0;
        }
    }
    return L;
}

arma::mat random_orthogonal(arma::uword K, Rng& rng) {
    arma::mat G(K, K);
    for (arma::uword j = 0; j < K; ++j) {
        for (arma::uword i = 0; i < K; ++i) {
            G(i, j) = rng.normal();
        }
    }
    arma::mat Q;
    arma::mat R;
    arma::qr(Q, R, G);
    for (arma::uword j = 0; j < K; ++j) {
        if (R(j, j) < 0.0) {
            Q.col(j) *= -1.0;
        }
    }
    return Q;
}

}  // namespace

IdentificationReport check_identification(const RestrictionPattern& pattern, const VecmModel& model,
                                          std::uint64_t seed) {
    pattern.validate();
    const arma::uword K = pattern.n_vars();
    if (model.n_vars() != K) {
        throw Error(ErrorCode::InvalidArgument, "pattern and model dimensions differ");
    }
    const arma::mat xi = long_run_multiplier(model);
    const arma::mat R = constraint_matrix(pattern, xi);
    const arma::mat S = null_space(R, K * K);
    const arma::mat L = elimination(K);

    IdentificationReport rep;
    rep.n_params = K * K;
    rep.n_covariance_eqs = K * (K + 1) / 2;
    rep.n_zeros = pattern.n_zeros();
    rep.n_independent = R.n_rows == 0 ? 0 : numerical_rank(R, 1e-9);
    rep.required = K * (K - 1) / 2;

    Rng rng(seed);
    for (int point = 0; point < 20; ++point) {
        arma::vec gamma(S.n_cols);
        for (auto& g : gamma) {
            g = rng.normal();
        }
        const arma::mat B = arma::reshape(S * gamma, K, K);
        const arma::mat J = R.n_rows == 0 ? arma::mat(L * covariance_jacobian(B))
                                          : arma::mat(arma::join_cols(L * covariance_jacobian(B), R));
        rep.jacobian_rank = std::max(rep.jacobian_rank, numerical_rank(J, 1e-9));
    }
    if (rep.jacobian_rank < K * K) {
        rep.status = IdentificationStatus::Under;
    } else if (rep.n_covariance_eqs + rep.n_independent == K * K) {
        rep.status = IdentificationStatus::Exactly;
    } else {
        rep.status = IdentificationStatus::Over;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Estimation

double structural_loglik(const arma::mat& B, const arma::mat& sigma, arma::uword n_obs) {
    const arma::uword K = B.n_rows;
    const double log2pi = std::log(2.0 * arma::datum::pi);
    double val = 0.0;
    double sign = 0.0;
    arma::log_det(val, sign, B);
    if (sign == 0.0 || !std::isfinite(val)) {
        return -std::numeric_limits<double>::infinity();
    }
    arma::mat Binv;
    if (!arma::inv(Binv, B)) {
        return -std::numeric_limits<double>::infinity();
    }
    const double tr = arma::trace(Binv.t() * Binv * sigma);
    return -0.5 * static_cast<double>(n_obs) * (static_cast<double>(K) * log2pi + 2.0 * val + tr);
}

namespace {

struct Attempt {
    arma::mat B;
    double loglik = -std::numeric_limits<double>::infinity();
    double gradient_norm = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Per-observation log-likelihood up to constants; cheaper and better scaled.
double objective(const arma::mat& B, const arma::mat& sigma) {
    double val = 0.0;
    double sign = 0.0;
    arma::log_det(val, sign, B);
    arma::mat Binv;
    if (sign == 0.0 || !std::isfinite(val) || !arma::inv(Binv, B)) {
        return -std::numeric_limits<double>::infinity();
    }
    return -val - 0.5 * arma::trace(Binv.t() * Binv * sigma);
}

Attempt score(const arma::mat& sigma, const arma::mat& S, arma::vec gamma, const IdentifyOptions& opt) {
    const arma::uword K = sigma.n_rows;
    const arma::mat I = arma::eye(K, K);
    Attempt out;
    arma::mat B = arma::reshape(S * gamma, K, K);
    double f = objective(B, sigma);
    if (!std::isfinite(f)) {
        return out;
    }
    for (int it = 0; it < opt.max_iter; ++it) {
        out.iterations = it;
        const arma::mat Binv = arma::inv(B);
        const arma::mat G = Binv.t() * (Binv * sigma * Binv.t() - I);
        const arma::vec g = S.t() * arma::vectorise(G);
        out.gradient_norm = arma::norm(g);
        if (out.gradient_norm < opt.tol) {
            out.converged = true;
            break;
        }
        const arma::mat sig_inv = Binv.t() * Binv;
        const arma::mat J = covariance_jacobian(B) * S;
        const arma::mat info = 0.5 * J.t() * arma::kron(sig_inv, sig_inv) * J;
        arma::vec delta;
        if (!arma::solve(delta, info, g, arma::solve_opts::no_approx)) {
            delta = arma::pinv(info) * g;
        }
        double step = 1.0;
        bool moved = false;
        for (int half = 0; half < 40; ++half) {
            const arma::vec cand = gamma + step * delta;
            const arma::mat Bc = arma::reshape(S * cand, K, K);
            const double fc = objective(Bc, sigma);
            if (std::isfinite(fc) && fc >= f) {
                gamma = cand;
                B = Bc;
                f = fc;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) {
            break;
        }
    }
    out.B = B;
    return out;
}

void normalize_signs(arma::mat& B, const RestrictionPattern& pattern) {
    const arma::uword K = B.n_rows;
    for (arma::uword j = 0; j < K; ++j) {
        double pivot = 0.0;
        if (!pattern.sign_rows.empty()) {
            pivot = B(pattern.sign_rows[j], j);
        } else if (pattern.b_zero(j, j) == 0) {
            pivot = B(j, j);
        } else {
            for (arma::uword i = 0; i < K; ++i) {
                if (std::abs(B(i, j)) > 1e-10) {
                    pivot = B(i, j);
                    break;
                }
            }
        }
        if (pivot < 0.0) {
            B.col(j) *= -1.0;
        }
    }
    B.elem(arma::find(pattern.b_zero == 1)).zeros();
}

}  // namespace

SvecModel identify(const VecmModel& model, const RestrictionPattern& pattern, const IdentifyOptions& options) {
    pattern.validate();
    const arma::uword K = pattern.n_vars();
    if (model.n_vars() != K) {
        throw Error(ErrorCode::InvalidArgument, "pattern and model dimensions differ");
    }
    SvecModel out;
    out.pattern = pattern;
    out.xi = long_run_multiplier(model);
    if (options.check) {
        out.identification = check_identification(pattern, model);
        if (out.identification->status == IdentificationStatus::Under) {
            throw Error(ErrorCode::NotIdentified, out.identification->summary());
        }
    }
    const arma::mat& sigma = model.sigma;
    arma::mat chol_lower;
    if (!arma::chol(chol_lower, sigma, "lower")) {
        throw Error(ErrorCode::SingularDesign, "residual covariance is not positive definite");
    }
    const arma::mat R = constraint_matrix(pattern, out.xi);
    const arma::mat S = null_space(R, K * K);
    const double sigma_norm = arma::norm(sigma, "fro");

    Rng rng(options.seed);
    Attempt best;
    const int n_attempts = std::max(1, options.restarts);
    int used = 0;
    for (int attempt = 0; attempt < n_attempts; ++attempt) {
        ++used;
        arma::mat B0 = (attempt == 0 && options.start) ? *options.start : chol_lower * random_orthogonal(K, rng);
        const Attempt a = score(sigma, S, S.t() * arma::vectorise(B0), options);
        if (!a.converged) {
            continue;
        }
        Attempt scored = a;
        scored.loglik = structural_loglik(a.B, sigma, model.n_obs);
        if (!best.converged || scored.loglik > best.loglik) {
            best = scored;
        }
        if (arma::norm(best.B * best.B.t() - sigma, "fro") / sigma_norm < 1e-8) {
            break;
        }
    }
    if (!best.converged) {
        throw Error(ErrorCode::NoConvergence,
                    "scoring did not converge in " + std::to_string(n_attempts) + " attempts");
    }
    normalize_signs(best.B, pattern);
    out.b = best.B;
    out.xi_b = out.xi * out.b;
    out.loglik = structural_loglik(out.b, sigma, model.n_obs);
    out.converged = true;
    out.iterations = best.iterations;
    out.attempts = used;
    out.gradient_norm = best.gradient_norm;
    return out;
}

// ---------------------------------------------------------------------------
// Bootstrap

BootstrapResult bootstrap_tvalues(const VecmModel& model, const SvecModel& svec, const BootstrapOptions& options) {
    if (options.reps < 2) {
        throw Error(ErrorCode::InvalidArgument, "bootstrap needs at least 2 replications");
    }
    const arma::uword K = model.n_vars();
    const arma::uword p = model.p;
    const std::vector<arma::mat> A = to_level_var(model);
    const arma::mat centered = model.residuals.each_row() - arma::mean(model.residuals, 0);
    const arma::mat initial = model.data.values.rows(0, p - 1);
    const arma::mat beta_ext = model.beta_extended();
    const arma::uword n = centered.n_rows;
    const auto reps = static_cast<std::size_t>(options.reps);

    std::vector<arma::vec> draws_b(reps);
    std::vector<arma::vec> draws_xi_b(reps);
    std::vector<char> ok(reps, 0);

    auto run_one = [&](std::size_t rep) {
        Rng rng(Rng::derive(options.seed, rep));
        arma::mat innov(n, K);
        for (arma::uword t = 0; t < n; ++t) {
            innov.row(t) = centered.row(rng.index(n));
        }
        TimePanel pseudo = model.data;
        pseudo.values = simulate_level_var(A, model.intercept, initial, innov);
        try {
            const VecmModel m = fit_vecm_given_beta(pseudo, p, model.deterministic, beta_ext);
            IdentifyOptions io;
            io.start = svec.b;
            io.restarts = options.restarts;
            io.seed = Rng::derive(options.seed ^ 0x5bd1e995ULL, rep);
            io.check = false;
            SvecModel s = identify(m, svec.pattern, io);
            for (arma::uword j = 0; j < K; ++j) {
                if (arma::dot(s.b.col(j), svec.b.col(j)) < 0.0) {
                    s.b.col(j) *= -1.0;
                }
            }
            s.xi_b = s.xi * s.b;
            draws_b[rep] = arma::vectorise(s.b);
            draws_xi_b[rep] = arma::vectorise(s.xi_b);
            ok[rep] = 1;
        } catch (const Error&) {
            ok[rep] = 0;
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(reps));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t rep = next++; rep < reps; rep = next++) {
            run_one(rep);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    BootstrapResult out;
    out.reps = options.reps;
    std::vector<arma::uword> good;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        if (ok[rep]) {
            good.push_back(rep);
        }
    }
    out.failed = static_cast<int>(reps - good.size());
    if (static_cast<double>(out.failed) > options.max_fail_share * static_cast<double>(reps) || good.size() < 2) {
        throw Error(ErrorCode::BootstrapFailure, std::to_string(out.failed) + " of " + std::to_string(reps) +
                                                     " replications failed");
    }
    arma::mat Db(K * K, good.size());
    arma::mat Dx(K * K, good.size());
    for (std::size_t c = 0; c < good.size(); ++c) {
        Db.col(c) = draws_b[good[c]];
        Dx.col(c) = draws_xi_b[good[c]];
    }
    out.sd_b = arma::reshape(arma::stddev(Db, 0, 1), K, K);
    out.sd_xi_b = arma::reshape(arma::stddev(Dx, 0, 1), K, K);

    auto tvals = [](const arma::mat& est, const arma::mat& sd, const arma::umat& zero) {
        arma::mat t(est.n_rows, est.n_cols, arma::fill::zeros);
        for (arma::uword i = 0; i < est.n_elem; ++i) {
            if (zero(i) == 0 && sd(i) > 0.0) {
                t(i) = est(i) / sd(i);
            }
        }
        return t;
    };
    out.tvalues_b = tvals(svec.b, out.sd_b, svec.pattern.b_zero);
    out.tvalues_xi_b = tvals(svec.xi_b, out.sd_xi_b, svec.pattern.xi_b_zero);
    return out;
}

}  // namespace svecm
