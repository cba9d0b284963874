#pragma once

#include "svecm/cointegration.hpp"
#include "svecm/dataset.hpp"
#include "svecm/svec.hpp"

#include <armadillo>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace svecm {

/**
 * Pipeline settings read from a flat key = value file.
 *
 *   data = series.csv            # relative to the config file
 *   year_column = year
 *   role.output = gdp            # optional; without roles the file must
 *   role.employment = emp        # already hold p, y_n, w_p, n, u
 *   role.wage = wage
 *   role.price = deflator
 *   role.unemployment = urate
 *   log_transform = true
 *   deterministic = unrestricted_constant | restricted_constant | none
 *   max_p = 4
 *   criterion = sc | aic | hq
 *   lag = 1                      # optional override of the VAR order
 *   rank = 1                     # optional override of the rank decision
 *   significance = 5 | 1
 *   adf_max_lags = 4
 *   beta_restriction = none | wage_setting
 *   impose_beta_restriction = false
 *   bootstrap_reps = 100         # 0 skips the bootstrap
 *   bootstrap_threads = 0
 *   identify_restarts = 10
 *   seed = 42                    # mandatory
 *   out_dir = out
 *   irf_horizon = 50
 *   fevd_horizons = 1,2,5,10,15,20
 *   shock_names = eps_p,eps_s,eps_w,eps_d,eps_l
 *   sign_rows = p,y_n,p,n,u
 *
 *   [restrictions]
 *   # B        | Xi B      (* free, 0 zero; rows in system order)
 *   * * * * *  | * * 0 * 0
 *   ...
 *   [end]
 */
struct PipelineConfig {
    std::filesystem::path data;
    std::string year_column = "year";
    std::optional<RoleMapping> roles;
    bool log_transform = true;
    Deterministic deterministic = Deterministic::UnrestrictedConstant;
    std::size_t max_p = 4;
    InfoCriterion criterion = InfoCriterion::Sc;
    std::optional<std::size_t> lag;
    std::optional<std::size_t> rank;
    Significance significance = Significance::FivePercent;
    std::size_t adf_max_lags = 4;
    std::string beta_restriction = "none";
    bool impose_beta_restriction = false;
    int bootstrap_reps = 100;
    unsigned bootstrap_threads = 0;
    int identify_restarts = 10;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = "out";
    arma::uword irf_horizon = 50;
    std::vector<arma::uword> fevd_horizons = {1, 2, 5, 10, 15, 20};
    std::optional<arma::umat> b_zero;
    std::optional<arma::umat> xi_b_zero;
    std::vector<std::string> shock_names;
    std::vector<std::string> sign_rows;

    /// Throws ConfigError: missing seed, missing data file, bad values.
    void validate() const;

    /// Pattern from the restriction block, or the wage-price default for a
    /// five-variable system when no block is given.
    [[nodiscard]] RestrictionPattern pattern(const std::vector<std::string>& variables) const;
};

/// Parses the text; relative paths resolve against base_dir. Throws ConfigError.
PipelineConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir);

PipelineConfig load_config(const std::filesystem::path& path);

std::string_view to_string(Deterministic det) noexcept;
Deterministic parse_deterministic(const std::string& text);

}  // namespace svecm
