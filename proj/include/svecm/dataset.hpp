#pragma once

#include <armadillo>

#include <filesystem>
#include <string>
#include <vector>

namespace svecm {

/// Annual K-variable panel. Rows are years, columns are variables.
struct TimePanel {
    std::vector<std::string> names;
    std::vector<int> years;
    arma::mat values;  // T x K

    [[nodiscard]] arma::uword n_obs() const { return values.n_rows; }
    [[nodiscard]] arma::uword n_vars() const { return values.n_cols; }

    /// Column index by name; throws MissingRole if absent.
    [[nodiscard]] arma::uword column(const std::string& name) const;

    /// Checks the panel invariants (consecutive years, finite values, shape).
    void validate() const;
};

/// Column order of the five-variable system used by every downstream module.
inline const std::vector<std::string> kSystemColumns = {"p", "y_n", "w_p", "n", "u"};
enum SystemColumn : arma::uword { kPrice = 0, kProductivity = 1, kRealWage = 2, kEmployment = 3, kUnemployment = 4 };

/// Column names for the five roles of the raw data.
struct RoleMapping {
    std::string output;
    std::string employment;
    std::string wage;
    std::string price;
    std::string unemployment;
};

/// Reads a comma-separated file with a header row. The year column is removed
/// from the values; all other columns must parse as numbers. Empty or NA
/// cells raise MissingValue; nothing is imputed.
TimePanel load_csv(const std::filesystem::path& path, const std::string& year_column);

/// Writes the panel in the load_csv schema with shortest round-trip numbers.
void save_csv(const TimePanel& panel, const std::filesystem::path& path,
              const std::string& year_column = "year");

/**
 * Builds (p, y-n, w-p, n, u) from raw levels.
 *
 * With log_levels = true, output, employment, wage and price are logged
 * (they must be strictly positive); unemployment is always taken as-is, in
 * the units supplied. With log_levels = false the four series are assumed
 * to be logs already.
 */
TimePanel build_system(const TimePanel& panel, const RoleMapping& roles, bool log_levels = true);

}  // namespace svecm
