#include "oracles.hpp"

#include "svecm/report.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace svecm;

TEST_SUITE("report") {

TEST_CASE("number formatting") {
    CHECK(fixed(0.12345, 4) == "0.1235");
    CHECK(fixed(-0.00001, 4) == "0.0000");
    CHECK(fixed(-1.5, 2) == "-1.50");
    CHECK(shortest(0.1) == "0.1");
    CHECK(std::stod(shortest(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("significance stars") {
    CHECK(significance_stars(1.0) == "");
    CHECK(significance_stars(1.7) == "*");
    CHECK(significance_stars(-2.0) == "**");
    CHECK(significance_stars(2.6) == "***");
    CHECK(significance_stars(0.0) == "");
}

TEST_CASE("shares keep their rounded total") {
    const auto r = round_shares(arma::rowvec{0.333333, 0.333333, 0.333334}, 2);
    CHECK(std::abs(r[0] + r[1] + r[2] - 1.0) < 1e-12);
    const auto s = round_shares(arma::rowvec{0.504, 0.436, 0.041, 0.019, 0.0}, 2);
    CHECK(s == std::vector<double>{0.50, 0.44, 0.04, 0.02, 0.00});
}

TEST_CASE("one-period variance table row from injected responses") {
    // impact responses of u whose squares are the shares 0.50, 0.44, 0.04, 0.02, 0.00
    arma::cube theta(5, 5, 1, arma::fill::zeros);
    theta.slice(0) = arma::eye(5, 5);
    const arma::rowvec shares = {0.50, 0.44, 0.04, 0.02, 0.00};
    theta.slice(0).row(4) = arma::sqrt(shares) % arma::rowvec{1.0, -1.0, 1.0, -1.0, 1.0};
    const FevdResult f = fevd_from_responses(theta, {1});
    const std::string table =
        render_fevd_table(f, 4, "u", {"eps_p", "eps_s", "eps_w", "eps_d", "eps_l"});
    CHECK(table ==
          "Variance decomposition of u\n"
          "  period   eps_p   eps_s   eps_w   eps_d   eps_l\n"
          "       1    0.50    0.44    0.04    0.02    0.00\n");
}

TEST_CASE("rank table layout") {
    RankTestResult r;
    r.eigenvalues = {0.5, 0.3};
    r.trace_stats = {99.39, 4.24};
    r.trace_critical = {trace_critical_values(2), trace_critical_values(1)};
    r.sl_stats = {67.70, 2.0};
    r.sl_critical = {sl_critical_values(2), sl_critical_values(1)};
    r.rank_five = 1;
    r.rank_one = 1;
    const std::string t = render_rank_table(r);
    CHECK(t.find("     0.5000    r<=0     99.39    15.41    19.62     67.70     9.84    13.48\n") !=
          std::string::npos);
    CHECK(t.find("selected rank: 1 at 5%, 1 at 1%") != std::string::npos);
}

TEST_CASE("relation solved for the real wage") {
    const arma::vec beta = {0.0, -1.0, 1.0, 0.0, 0.433};
    CHECK(render_relation(beta, kSystemColumns) == "(w - p) = 1.0000 (y - n) - 0.4330 u");
    const arma::vec scaled = 2.0 * beta;
    CHECK(render_relation(scaled, kSystemColumns) == "(w - p) = 1.0000 (y - n) - 0.4330 u");
    const arma::vec no_wage = {1.0, 0.0, 0.0, -2.0, 0.0};
    CHECK(render_relation(no_wage, kSystemColumns) == "n = 0.5000 p");
}

TEST_CASE("impact table with masked entries") {
    const arma::mat v = {{0.1255, -0.0258}, {0.0016, 0.0}};
    const arma::mat t = {{3.0, -2.0}, {0.5, 0.0}};
    const arma::umat mask = {{0, 0}, {0, 1}};
    const std::string s = render_impact_table("B", v, t, mask, {"u", "n"}, {"eps_a", "eps_b"});
    CHECK(s ==
          "B\n"
          "                   eps_a         eps_b\n"
          "u                 0.1255       -0.0258\n"
          "               (3.00)***     (-2.00)**\n"
          "n                 0.0016             0\n"
          "                  (0.50)              \n");
    const std::string no_t = render_impact_table("B", v, arma::mat(), mask, {"u", "n"}, {"eps_a", "eps_b"});
    CHECK(no_t.find("(") == std::string::npos);
}

TEST_CASE("adf verdicts") {
    AdfRow row;
    row.level.critical_values = {-3.4, -2.9, -2.6};
    row.difference.critical_values = {-3.4, -2.9, -2.6};
    row.level.statistic = -1.0;
    row.difference.statistic = -5.0;
    CHECK(integration_verdict(row) == "I(1)");
    row.level.statistic = -3.0;
    CHECK(integration_verdict(row) == "I(0)");
    row.level.statistic = -1.0;
    row.difference.statistic = -1.0;
    CHECK(integration_verdict(row) == "I(2+)");
}

TEST_CASE("csv and svg artifacts") {
    const auto dir = oracle::scratch_dir("report_files");
    const arma::mat m = {{1.0 / 3.0, -2.5}, {1e-17, 4.0}};
    write_matrix_csv(dir / "m.csv", m, {"a", "b"}, {"x", "y"});
    const std::string text = oracle::read_file(dir / "m.csv");
    CHECK(text.rfind("variable,x,y\na,", 0) == 0);
    const TimePanel back = [&] {
        // row labels are not years, so parse by hand
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        TimePanel p;
        p.values.set_size(2, 2);
        for (int i = 0; i < 2; ++i) {
            std::getline(in, line);
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            p.values(i, 0) = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
            p.values(i, 1) = std::stod(line.substr(c2 + 1));
        }
        return p;
    }();
    CHECK(arma::approx_equal(back.values, m, "absdiff", 0.0));

    write_svg_line(dir / "a.svg", "irf", arma::vec{0.0, 1.0, -0.5});
    const std::string svg = oracle::read_file(dir / "a.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

}  // TEST_SUITE
