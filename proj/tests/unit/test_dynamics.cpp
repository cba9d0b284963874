#include "oracles.hpp"

#include "svecm/dynamics.hpp"
#include "svecm/error.hpp"
#include "svecm/wsps.hpp"

#include <doctest.h>

#include <cmath>

using namespace svecm;

namespace {

struct Fitted {
    VecmModel vecm;
    SvecModel svec;
};

Fitted fitted(arma::uword T, std::uint64_t seed, std::size_t p = 1) {
    const auto shocks = draw_shocks(T - 1, ShockSigmas{}, seed);
    const TimePanel sys = simulate(WsPsParams{}, shocks, arma::vec{0.0, 0.0, 0.0, 0.0, 0.05});
    Fitted f{fit_vecm(sys, p, 1, Deterministic::RestrictedConstant), {}};
    f.svec = identify(f.vecm, RestrictionPattern::default_wage_price());
    return f;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("impact responses equal B exactly") {
    const Fitted f = fitted(500, 1);
    const IrfResult r = irf(f.svec, f.vecm, 20);
    CHECK(r.horizon() == 20);
    CHECK(arma::approx_equal(r.responses.slice(0), f.svec.b, "absdiff", 0.0));
}

TEST_CASE("responses match the injected-shock simulation") {
    const Fitted f = fitted(500, 2, 3);
    const auto A = to_level_var(f.vecm);
    REQUIRE(A.size() == 3);
    const IrfResult r = irf(f.svec, f.vecm, 50);
    const arma::cube sim = oracle::injected_shock_irf(A, f.svec.b, 50);
    CHECK(arma::abs(arma::vectorise(r.responses - sim)).max() < 1e-10);
}

TEST_CASE("moving-average recursion") {
    const std::vector<arma::mat> A = {{{0.5, 0.1}, {0.0, 0.3}}, {{0.1, 0.0}, {0.2, 0.1}}};
    const arma::cube phi = ma_coefficients(A, 3);
    CHECK(arma::approx_equal(phi.slice(0), arma::eye(2, 2), "absdiff", 0.0));
    CHECK(arma::abs(phi.slice(1) - A[0]).max() < 1e-15);
    CHECK(arma::abs(phi.slice(2) - (A[0] * A[0] + A[1])).max() < 1e-15);
    CHECK(arma::abs(phi.slice(3) - (A[0] * phi.slice(2) + A[1] * A[0])).max() < 1e-15);
}

TEST_CASE("accumulated and differenced responses") {
    const std::vector<arma::mat> A = {{{0.5, 0.1}, {0.0, 0.3}}};
    const arma::mat B = {{1.0, 0.0}, {0.5, 2.0}};
    const IrfResult plain = irf(A, B, 10);
    const IrfResult acc = irf(A, B, 10, true);
    CHECK(acc.accumulated);
    arma::mat sum(2, 2, arma::fill::zeros);
    for (arma::uword h = 0; h <= 10; ++h) {
        sum += plain.responses.slice(h);
        CHECK(arma::abs(acc.responses.slice(h) - sum).max() < 1e-14);
    }
    const arma::cube d = difference_responses(plain.responses);
    CHECK(arma::approx_equal(d.slice(0), plain.responses.slice(0), "absdiff", 0.0));
    CHECK(arma::abs(d.slice(4) - (plain.responses.slice(4) - plain.responses.slice(3))).max() < 1e-15);
}

TEST_CASE("IRFs are linear in the columns of B") {
    const Fitted f = fitted(400, 3);
    const auto A = to_level_var(f.vecm);
    arma::mat B2 = f.svec.b;
    B2.col(2) *= -2.5;
    const IrfResult a = irf(A, f.svec.b, 30);
    const IrfResult b = irf(A, B2, 30);
    for (arma::uword h = 0; h <= 30; ++h) {
        CHECK(arma::abs(b.responses.slice(h).col(2) + 2.5 * a.responses.slice(h).col(2)).max() < 1e-12);
        CHECK(arma::approx_equal(b.responses.slice(h).col(0), a.responses.slice(h).col(0), "absdiff", 0.0));
    }
}

TEST_CASE("one-step FEVD uses the impact matrix only") {
    const std::vector<arma::mat> A = {{{0.5, 0.1, 0.0}, {0.0, 0.3, 0.2}, {0.1, 0.0, 0.4}}};
    const arma::mat B = {{1.0, 0.5, -0.2}, {0.3, 2.0, 0.0}, {0.0, -1.0, 0.7}};
    const FevdResult f = fevd_from_responses(irf(A, B, 5).responses, {1});
    const arma::mat sq = arma::square(B);
    const arma::mat expected = sq.each_col() / arma::sum(sq, 1);
    CHECK(arma::abs(f.shares[0] - expected).max() < 1e-15);

    const arma::mat D = arma::diagmat(arma::vec{1.0, 2.0, 3.0});
    const std::vector<arma::mat> diagonal = {arma::diagmat(arma::vec{0.5, 0.3, 0.4})};
    const FevdResult g = fevd_from_responses(irf(diagonal, D, 5).responses, {1, 2, 5});
    for (const auto& s : g.shares) CHECK(arma::abs(s - arma::eye(3, 3)).max() < 1e-15);
}

TEST_CASE("rows sum to one at the default horizons") {
    const Fitted f = fitted(800, 4);
    const FevdResult r = fevd(f.svec, f.vecm);
    CHECK(r.horizons == kDefaultFevdHorizons);
    for (const auto& s : r.shares) {
        CHECK(arma::abs(arma::sum(s, 1) - 1.0).max() < 1e-8);
        CHECK(s.min() >= 0.0);
    }
}

TEST_CASE("FEVD ignores the sign of B") {
    const Fitted f = fitted(400, 5);
    const auto A = to_level_var(f.vecm);
    arma::mat flipped = f.svec.b;
    flipped.col(0) *= -1.0;
    flipped.col(3) *= -1.0;
    const FevdResult a = fevd_from_responses(irf(A, f.svec.b, 20).responses, kDefaultFevdHorizons);
    const FevdResult b = fevd_from_responses(irf(A, flipped, 20).responses, kDefaultFevdHorizons);
    for (std::size_t k = 0; k < a.shares.size(); ++k) {
        CHECK(arma::abs(a.shares[k] - b.shares[k]).max() < 1e-15);
    }
}

TEST_CASE("degenerate variance and bad horizons") {
    arma::cube theta(2, 2, 3, arma::fill::zeros);
    theta(0, 0, 0) = 1.0;
    CHECK_THROWS_AS(fevd_from_responses(theta, {1}), Error);
    theta(1, 1, 0) = 1.0;
    CHECK_NOTHROW(fevd_from_responses(theta, {1, 3}));
    CHECK_THROWS_AS(fevd_from_responses(theta, {4}), Error);
    CHECK_THROWS_AS(fevd_from_responses(theta, {0}), Error);
}

TEST_CASE("wage-shock responses die out") {
    const Fitted f = fitted(2000, 6);
    const IrfResult r = irf(f.svec, f.vecm, 200);
    for (arma::uword i = 0; i < 5; ++i) {
        double peak = 0.0;
        for (arma::uword h = 0; h <= 200; ++h) peak = std::max(peak, std::abs(r.responses(i, kShockWage, h)));
        CHECK(std::abs(r.responses(i, kShockWage, 200)) < 1e-3 * peak);
    }
}

}  // TEST_SUITE
