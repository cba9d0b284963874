#include "oracles.hpp"

#include "svecm/cointegration.hpp"
#include "svecm/error.hpp"
#include "svecm/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace svecm;

namespace {

TimePanel stationary_var(const std::vector<arma::mat>& A, arma::uword T, std::uint64_t seed) {
    const arma::uword K = A.front().n_rows;
    const arma::uword burn = 100;
    const arma::mat e = oracle::normals(T + burn, K, seed);
    arma::mat X(T + burn, K, arma::fill::zeros);
    for (arma::uword t = A.size(); t < T + burn; ++t) {
        arma::vec x = e.row(t).t();
        for (arma::uword i = 0; i < A.size(); ++i) x += A[i] * X.row(t - 1 - i).t();
        X.row(t) = x.t();
    }
    return oracle::panel(X.rows(burn, T + burn - 1));
}

}  // namespace

TEST_SUITE("cointegration") {

TEST_CASE("trace critical values printed with the application") {
    const auto uc = Deterministic::UnrestrictedConstant;
    CHECK(trace_critical_values(5, uc).five == 69.61);
    CHECK(trace_critical_values(5, uc).one == 77.29);
    CHECK(trace_critical_values(4, uc).five == 47.71);
    CHECK(trace_critical_values(4, uc).one == 54.23);
    CHECK(trace_critical_values(3, uc).five == 29.80);
    CHECK(trace_critical_values(3, uc).one == 35.21);
    CHECK(trace_critical_values(2, uc).five == 15.41);
    CHECK(trace_critical_values(2, uc).one == 19.62);
    CHECK_THROWS_AS(trace_critical_values(0, uc), Error);
    CHECK_THROWS_AS(trace_critical_values(11, uc), Error);
}

TEST_CASE("S&L critical values") {
    CHECK(sl_critical_values(5).five == 54.59);
    CHECK(sl_critical_values(5).one == 61.53);
    CHECK(sl_critical_values(4).five == 35.76);
    CHECK(sl_critical_values(4).one == 41.58);
    CHECK(sl_critical_values(3).five == 20.96);
    CHECK(sl_critical_values(3).one == 25.71);
    CHECK(sl_critical_values(2).five == 9.84);
    CHECK(sl_critical_values(2).one == 13.48);
}

TEST_CASE("rank decision replay") {
    const std::vector<double> stats = {99.39, 47.43, 20.45, 4.24};
    std::vector<CriticalPair> cv;
    for (std::size_t kr = 5; kr >= 2; --kr) cv.push_back(trace_critical_values(kr));
    CHECK(decide_rank(stats, cv, Significance::OnePercent) == 1);
    CHECK(decide_rank(stats, cv, Significance::FivePercent) == 1);

    const std::vector<double> sl = {67.70};
    const std::vector<CriticalPair> slcv = {sl_critical_values(5)};
    CHECK(decide_rank(sl, slcv, Significance::OnePercent) == 1);  // r = 0 rejected at 1%

    const std::vector<double> none = {1.0, 0.5};
    const std::vector<CriticalPair> two = {trace_critical_values(2), trace_critical_values(1)};
    CHECK(decide_rank(none, two, Significance::FivePercent) == 0);
    const std::vector<double> all = {500.0, 400.0};
    CHECK(decide_rank(all, two, Significance::FivePercent) == 2);
}

TEST_CASE("max_p = 1 selects 1") {
    const TimePanel p = oracle::panel(oracle::normals(50, 3, 1));
    CHECK(select_lag(p, 1, InfoCriterion::Sc) == 1);
    CHECK(lag_criteria(p, 1, InfoCriterion::Aic).size() == 1);
}

TEST_CASE("white noise selects order 1") {
    int ones = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const TimePanel p = oracle::panel(oracle::normals(200, 5, Rng::derive(101, s)));
        ones += select_lag(p, 4, InfoCriterion::Sc) == 1;
    }
    CHECK(ones >= 95);
}

TEST_CASE("VAR(2) with large coefficients selects order 2") {
    const std::vector<arma::mat> A = {0.5 * arma::eye(3, 3) + 0.1 * arma::ones(3, 3), -0.6 * arma::eye(3, 3)};
    int twos = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        twos += select_lag(stationary_var(A, 500, Rng::derive(102, s)), 4, InfoCriterion::Sc) == 2;
    }
    CHECK(twos >= 95);
}

TEST_CASE("independent random walks have rank 0") {
    int zeros = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        arma::mat X = arma::cumsum(oracle::normals(1000, 3, Rng::derive(103, s)));
        zeros += johansen(oracle::panel(X), 1).test.rank_five == 0;
    }
    CHECK(zeros >= 90);
}

TEST_CASE("stationary AR(1) panel has full rank") {
    const std::vector<arma::mat> A = {0.5 * arma::eye(3, 3)};
    int full = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        full += johansen(stationary_var(A, 1000, Rng::derive(104, s)), 1).test.rank_five == 3;
    }
    CHECK(full >= 90);
}

TEST_CASE("trace statistics telescope into the eigenvalues") {
    const arma::mat X = oracle::simulate_vecm1({-0.2, 0.1, 0.0}, {1.0, -1.0, 0.5}, arma::zeros(3), 400, 7);
    for (auto det : {Deterministic::UnrestrictedConstant, Deterministic::RestrictedConstant}) {
        const JohansenResult jr = johansen(oracle::panel(X), 2, det);
        const auto& ts = jr.test.trace_stats;
        const double n = static_cast<double>(jr.decomposition.n_obs);
        REQUIRE(ts.size() == 3);
        for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
            const double term = -n * std::log(1.0 - jr.test.eigenvalues(j));
            CHECK(std::abs((ts[j] - ts[j + 1]) - term) < 1e-9 * std::max(1.0, term));
        }
        CHECK(std::abs(ts.back() + n * std::log(1.0 - jr.test.eigenvalues(2))) < 1e-9);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(jr.test.eigenvalues(j) >= 0.0);
            CHECK(jr.test.eigenvalues(j) < 1.0);
            if (j > 0) CHECK(jr.test.eigenvalues(j) <= jr.test.eigenvalues(j - 1));
        }
        CHECK(jr.test.sl_stats.size() == 3);
    }
}

TEST_CASE("eigenvalues are invariant to rescaling a column") {
    arma::mat X = oracle::simulate_vecm1({-0.2, 0.1, 0.0}, {1.0, -1.0, 0.5}, arma::zeros(3), 300, 8);
    const arma::vec e0 = johansen(oracle::panel(X), 1).test.eigenvalues;
    X.col(1) *= 37.0;
    X.col(2) *= -0.05;
    const arma::vec e1 = johansen(oracle::panel(X), 1).test.eigenvalues;
    CHECK(arma::abs(e0 - e1).max() < 1e-8);
}

TEST_CASE("eigenvectors satisfy the normalization v' S11 v = I") {
    const arma::mat X = oracle::simulate_vecm1({-0.2, 0.1, 0.0}, {1.0, -1.0, 0.5}, arma::zeros(3), 300, 9);
    const JohansenDecomposition d = johansen_decomposition(X, 2, Deterministic::RestrictedConstant);
    CHECK(d.S11.n_rows == 4);
    const arma::mat V = d.eigenvectors;
    CHECK(arma::abs(V.t() * d.S11 * V - arma::eye(V.n_cols, V.n_cols)).max() < 1e-8);
}

TEST_CASE("normalize_beta") {
    const arma::mat b = arma::mat(arma::vec{0.0, 2.0, -4.0});
    const arma::mat n = normalize_beta(b);
    CHECK(n(1, 0) == 1.0);
    CHECK(n(2, 0) == -2.0);
    const arma::mat b2 = {{2.0, 1.0}, {1.0, 1.0}, {3.0, 5.0}};
    const arma::mat n2 = normalize_beta(b2);
    CHECK(arma::abs(n2.rows(0, 1) - arma::eye(2, 2)).max() < 1e-12);
    // same column space
    CHECK(arma::abs(n2 - b2 * arma::solve(b2.rows(0, 1), arma::eye(2, 2))).max() < 1e-12);
}

TEST_CASE("unrestricted H gives LR = 0 and df = 0") {
    const arma::mat X = oracle::simulate_vecm1({-0.2, 0.1, 0.0}, {1.0, -1.0, 0.5}, arma::zeros(3), 300, 10);
    const JohansenResult jr = johansen(oracle::panel(X), 1);
    const arma::mat H = {{1.0, 0.0, 1.0}, {0.0, 2.0, 0.0}, {0.0, 1.0, 3.0}};
    const BetaTestResult t = test_beta_restriction(jr.decomposition, 1, BetaRestriction{H, "full"});
    CHECK(t.lr == 0.0);
    CHECK(t.df == 0);
    CHECK(t.p_value == 1.0);
}

TEST_CASE("restricted eigenvalues never exceed the unrestricted ones") {
    const arma::mat X = oracle::simulate_vecm1({-0.2, 0.1, 0.0}, {1.0, -1.0, 0.5}, arma::zeros(3), 300, 11);
    for (auto det : {Deterministic::UnrestrictedConstant, Deterministic::RestrictedConstant}) {
        const JohansenResult jr = johansen(oracle::panel(X), 1, det);
        const arma::mat H = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}};
        const BetaTestResult t = test_beta_restriction(jr.decomposition, 1, BetaRestriction{H, "h"});
        CHECK(t.lr >= 0.0);
        CHECK(t.df == 1);
        for (arma::uword i = 0; i < t.restricted_eigenvalues.n_elem && i < 3; ++i) {
            CHECK(t.restricted_eigenvalues(i) <= jr.test.eigenvalues(i) + 1e-12);
        }
    }
}

TEST_CASE("restriction errors") {
    const arma::mat X = oracle::simulate_vecm1({-0.2, 0.1, 0.0}, {1.0, -1.0, 0.5}, arma::zeros(3), 200, 12);
    const JohansenResult jr = johansen(oracle::panel(X), 1);
    CHECK_THROWS_AS(test_beta_restriction(jr.decomposition, 1, BetaRestriction{arma::ones(4, 1), ""}), Error);
    CHECK_THROWS_AS(test_beta_restriction(jr.decomposition, 0, BetaRestriction{arma::ones(3, 1), ""}), Error);
    CHECK_THROWS_AS(test_beta_restriction(JohansenDecomposition{}, 1, BetaRestriction{arma::ones(3, 1), ""}), Error);
}

TEST_CASE("a true wage-setting restriction is accepted") {
    // beta = (0, -1, 1, 0, 0.4) over (p, y-n, w-p, n, u)
    const arma::vec beta = {0.0, -1.0, 1.0, 0.0, 0.4};
    const arma::vec alpha = {0.05, 0.1, -0.3, 0.1, -0.2};
    int accepted = 0;
    double median_gap = 0.0;
    std::vector<double> coef;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const arma::mat X = oracle::simulate_vecm1(alpha, beta, arma::zeros(5), 1000, Rng::derive(105, s));
        const JohansenResult jr = johansen(oracle::panel(X, kSystemColumns), 1);
        const BetaTestResult t = test_beta_restriction(jr.decomposition, 1, BetaRestriction::wage_setting());
        accepted += t.p_value > 0.05;
        CHECK(t.df == 3);
        coef.push_back(t.beta(kUnemployment, 0) / t.beta(kRealWage, 0));
    }
    std::sort(coef.begin(), coef.end());
    median_gap = std::abs(coef[50] - 0.4);
    CHECK(accepted >= 90);
    CHECK(median_gap < 0.05);
}

TEST_CASE("too short samples") {
    const TimePanel p = oracle::panel(oracle::normals(8, 5, 3));
    CHECK_THROWS_AS(johansen(p, 1), Error);
}

}  // TEST_SUITE
