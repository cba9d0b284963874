#include "oracles.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"
#include "svecm/rng.hpp"
#include "svecm/vecm.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace svecm;

namespace {

const arma::vec kAlpha = {-0.2, 0.1, 0.0};
const arma::vec kBeta = {1.0, -1.0, 0.5};

VecmModel hand_model(const arma::mat& alpha, const arma::mat& beta, std::vector<arma::mat> gammas = {}) {
    VecmModel m;
    m.alpha = alpha;
    m.beta = beta;
    m.r = alpha.n_cols;
    m.p = gammas.size() + 1;
    m.gammas = std::move(gammas);
    m.intercept = arma::zeros(alpha.n_rows);
    return m;
}

}  // namespace

TEST_SUITE("vecm") {

TEST_CASE("level VAR of a two-variable example") {
    const VecmModel m = hand_model(arma::mat(arma::vec{-0.5, 0.0}), arma::mat(arma::vec{1.0, -1.0}));
    const auto A = to_level_var(m);
    REQUIRE(A.size() == 1);
    CHECK(arma::approx_equal(A[0], arma::mat{{0.5, 0.5}, {0.0, 1.0}}, "absdiff", 1e-15));
}

TEST_CASE("no error correction leaves a unit-root VAR") {
    const arma::mat G = {{0.3, 0.1}, {-0.2, 0.4}};
    const VecmModel m = hand_model(arma::zeros(2, 1), arma::mat(arma::vec{1.0, -1.0}), {G});
    const auto A = to_level_var(m);
    REQUIRE(A.size() == 2);
    CHECK(arma::approx_equal(A[0], arma::eye(2, 2) + G, "absdiff", 1e-15));
    CHECK(arma::approx_equal(A[1], -G, "absdiff", 1e-15));
}

TEST_CASE("level VAR and VECM recursions agree over 500 steps") {
    const arma::mat G1 = {{0.2, 0.0, 0.1}, {0.05, -0.1, 0.0}, {0.0, 0.1, 0.3}};
    const arma::mat G2 = {{-0.1, 0.05, 0.0}, {0.0, 0.1, 0.0}, {0.02, 0.0, -0.05}};
    VecmModel m = hand_model(kAlpha, kBeta, {G1, G2});
    m.intercept = {0.01, -0.02, 0.03};
    const auto A = to_level_var(m);
    REQUIRE(A.size() == 3);
    const arma::mat e = oracle::normals(500, 3, 31);
    const arma::mat init = oracle::normals(3, 3, 32);
    const arma::mat levels = simulate_level_var(A, m.intercept, init, e);
    REQUIRE(levels.n_rows == 503);

    // dX_t = nu + alpha beta' X_{t-1} + G1 dX_{t-1} + G2 dX_{t-2} + e_t
    arma::mat X(503, 3);
    X.rows(0, 2) = init;
    for (arma::uword t = 3; t < 503; ++t) {
        const arma::vec x1 = X.row(t - 1).t();
        const arma::vec d1 = x1 - X.row(t - 2).t();
        const arma::vec d2 = X.row(t - 2).t() - X.row(t - 3).t();
        const arma::vec dx = m.intercept + kAlpha * arma::dot(kBeta, x1) + G1 * d1 + G2 * d2 + e.row(t - 3).t();
        X.row(t) = (x1 + dx).t();
    }
    CHECK(arma::abs(levels - X).max() < 1e-10);
}

TEST_CASE("rank outside 1..K-1") {
    const TimePanel p = oracle::panel(oracle::simulate_vecm1(kAlpha, kBeta, arma::zeros(3), 200, 1));
    for (std::size_t r : {0u, 3u}) {
        try {
            fit_vecm(p, 1, r);
            FAIL("expected RankOutOfRange");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::RankOutOfRange);
        }
    }
}

TEST_CASE("alpha given the true beta matches a direct regression") {
    const arma::mat X = oracle::simulate_vecm1(kAlpha, kBeta, arma::zeros(3), 500, 2);
    const TimePanel p = oracle::panel(X);
    const VecmModel m = fit_vecm(p, 1, 1, Deterministic::UnrestrictedConstant, BetaRestriction::fixed(kBeta));
    // normalization leaves the true vector alone (first entry already 1)
    CHECK(arma::abs(m.beta - kBeta).max() < 1e-12);

    // dX_t on [beta'X_{t-1}, 1], equation by equation; with a common
    // regressor set OLS and GLS coincide
    const arma::uword n = X.n_rows - 1;
    arma::mat R(n, 2);
    R.col(0) = X.rows(0, n - 1) * kBeta;
    R.col(1).ones();
    for (arma::uword k = 0; k < 3; ++k) {
        const arma::vec y = X.rows(1, n).col(k) - X.rows(0, n - 1).col(k);
        const auto fit = oracle::ols_normal(R, y);
        CHECK(std::abs(m.alpha(k, 0) - fit.coef(0)) < 1e-8);
        CHECK(std::abs(m.intercept(k) - fit.coef(1)) < 1e-8);
        CHECK(arma::abs(m.residuals.col(k) - fit.resid).max() < 1e-8);
    }
    CHECK(arma::abs(m.sigma - m.residuals.t() * m.residuals / static_cast<double>(n)).max() < 1e-14);
}

TEST_CASE("residuals are orthogonal to the regressors") {
    const arma::mat X = oracle::simulate_vecm1(kAlpha, kBeta, arma::zeros(3), 400, 3);
    for (auto det : {Deterministic::UnrestrictedConstant, Deterministic::RestrictedConstant, Deterministic::None}) {
        const VecmModel m = fit_vecm(oracle::panel(X), 3, 1, det);
        CHECK(m.gammas.size() == 2);
        const arma::uword n = m.n_obs;
        CHECK(n == X.n_rows - 3);
        const arma::mat D = diff_rows(X);
        arma::mat R = X.rows(2, X.n_rows - 2) * m.beta;  // beta'X_{t-1}
        if (det == Deterministic::RestrictedConstant) R += m.beta_const(0);
        R = arma::join_rows(R, D.rows(1, D.n_rows - 2), D.rows(0, D.n_rows - 3));
        if (det == Deterministic::UnrestrictedConstant) R = arma::join_rows(R, arma::ones(n, 1));
        const arma::mat cross = R.t() * m.residuals;
        CHECK(arma::abs(cross).max() < 1e-8 * static_cast<double>(n));
        if (det == Deterministic::RestrictedConstant) {
            CHECK(m.beta_const.n_elem == 1);
            CHECK(arma::abs(m.intercept - m.alpha * m.beta_const.t()).max() < 1e-14);
        }
        if (det == Deterministic::None) {
            CHECK(arma::abs(m.intercept).max() == 0.0);
        }
    }
}

TEST_CASE("handles p = 1 with no lagged differences") {
    const TimePanel p = oracle::panel(oracle::simulate_vecm1(kAlpha, kBeta, arma::zeros(3), 200, 4));
    const VecmModel m = fit_vecm(p, 1, 1);
    CHECK(m.gammas.empty());
    CHECK(to_level_var(m).size() == 1);
}

TEST_CASE("round trip through the level VAR recovers Pi") {
    const arma::mat G = {{0.2, 0.0, 0.0}, {0.0, 0.1, 0.0}, {0.1, 0.0, -0.2}};
    VecmModel truth = hand_model(kAlpha, kBeta, {G});
    const auto A = to_level_var(truth);
    const arma::mat levels =
        simulate_level_var(A, arma::zeros(3), arma::zeros(2, 3), oracle::normals(5000, 3, 5));
    const VecmModel fit = fit_vecm(oracle::panel(levels), 2, 1);
    CHECK(arma::abs(fit.pi() - truth.pi()).max() < 0.03);
    CHECK(arma::abs(fit.gammas[0] - G).max() < 0.05);
    CHECK(arma::abs(fit.sigma - arma::eye(3, 3)).max() < 0.08);
}

TEST_CASE("median beta error over seeded replications") {
    std::vector<double> err[3];
    for (std::uint64_t s = 0; s < 30; ++s) {
        const arma::mat X = oracle::simulate_vecm1(kAlpha, kBeta, {0.1, 0.1, 0.1}, 2000, Rng::derive(200, s));
        const VecmModel m = fit_vecm(oracle::panel(X), 1, 1);
        for (int k = 0; k < 3; ++k) err[k].push_back(std::abs(m.beta(k, 0) - kBeta(k)));
    }
    for (auto& e : err) {
        std::sort(e.begin(), e.end());
        CHECK(e[e.size() / 2] < 0.05);
    }
}

TEST_CASE("given-beta fit with a restricted constant") {
    const arma::mat X = oracle::simulate_vecm1(kAlpha, kBeta, arma::zeros(3), 300, 6);
    const VecmModel full = fit_vecm(oracle::panel(X), 2, 1, Deterministic::RestrictedConstant);
    const VecmModel again = fit_vecm_given_beta(oracle::panel(X), 2, Deterministic::RestrictedConstant,
                                                full.beta_extended());
    CHECK(arma::abs(again.alpha - full.alpha).max() < 1e-10);
    CHECK(arma::abs(again.sigma - full.sigma).max() < 1e-12);
    CHECK(full.beta_extended().n_rows == 4);
}

}  // TEST_SUITE
