#pragma once

#include "svecm/cointegration.hpp"
#include "svecm/dynamics.hpp"
#include "svecm/unitroot.hpp"

#include <armadillo>

#include <filesystem>
#include <string>
#include <vector>

namespace svecm {

/// Fixed-point text with the given number of decimals ("-0.0000" prints as "0.0000").
std::string fixed(double value, int decimals);

/// Shortest decimal text that parses back to the same double.
std::string shortest(double value);

/// "*", "**", "***" at the two-sided 10/5/1% normal critical values.
std::string significance_stars(double t);

/// Rounds shares to `decimals` so that the rounded row keeps the rounded sum
/// of the input (largest-remainder apportionment).
std::vector<double> round_shares(const arma::rowvec& shares, int decimals);

struct AdfRow {
    std::string variable;
    AdfResult level;
    AdfResult difference;
};

/// I(0), I(1) or I(2+) from the 5% decisions on levels and differences.
std::string integration_verdict(const AdfRow& row);

std::string render_adf_table(const std::vector<AdfRow>& rows);

/// Eigenvalue, H0, trace statistic with 5%/1% values, S&L statistic with 5%/1% values.
std::string render_rank_table(const RankTestResult& result);

/// Cointegration relation solved for (w-p): "(w - p) = c1 (y - n) + ... ".
/// Falls back to the first variable when (w-p) has no weight.
std::string render_relation(const arma::vec& beta, const std::vector<std::string>& names);

/// Coefficients at 4 decimals with t-values and stars underneath; restricted
/// entries print as "0". An empty tvalues matrix omits the t row.
std::string render_impact_table(const std::string& title, const arma::mat& values, const arma::mat& tvalues,
                                const arma::umat& zero_mask, const std::vector<std::string>& rows,
                                const std::vector<std::string>& shocks);

/// Plain matrix at 4 decimals with row and column labels.
std::string render_matrix(const std::string& title, const arma::mat& values, const std::vector<std::string>& rows,
                          const std::vector<std::string>& cols);

/// Periods x shocks at 2 decimals for one variable.
std::string render_fevd_table(const FevdResult& fevd, arma::uword variable, const std::string& variable_name,
                              const std::vector<std::string>& shocks);

/// CSV with a header row; numbers in shortest round-trip form.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Labelled matrix as CSV: first column holds the row labels.
void write_matrix_csv(const std::filesystem::path& path, const arma::mat& values,
                      const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                      const std::string& corner = "variable");

/// Minimal SVG line chart of y against 0..n-1 with a zero line.
void write_svg_line(const std::filesystem::path& path, const std::string& title, const arma::vec& y);

}  // namespace svecm
