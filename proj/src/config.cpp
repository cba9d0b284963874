#include "svecm/config.hpp"

#include "svecm/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace svecm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(const std::string& text, std::size_t line, const std::string& key) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        config_error(line, "bad value '" + text + "' for " + key);
    }
    return value;
}

bool parse_bool(const std::string& text, std::size_t line, const std::string& key) {
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    config_error(line, "expected true or false for " + key);
}

// One row of the restriction block: K cells for B, '|', K cells for Xi B.
void parse_pattern_row(const std::string& text, std::size_t line, std::vector<std::vector<arma::uword>>& b,
                       std::vector<std::vector<arma::uword>>& xb) {
    const auto bar = text.find('|');
    if (bar == std::string::npos) {
        config_error(line, "restriction rows need 'B cells | Xi B cells'");
    }
    auto cells = [&](const std::string& part) {
        std::vector<arma::uword> out;
        std::stringstream ss(part);
        std::string c;
        while (ss >> c) {
            if (c == "*") out.push_back(0);
            else if (c == "0") out.push_back(1);
            else config_error(line, "restriction cells must be '*' or '0', got '" + c + "'");
        }
        return out;
    };
    b.push_back(cells(text.substr(0, bar)));
    xb.push_back(cells(text.substr(bar + 1)));
}

arma::umat to_mask(const std::vector<std::vector<arma::uword>>& rows, std::size_t line) {
    const std::size_t K = rows.size();
    arma::umat m(K, K);
    for (std::size_t i = 0; i < K; ++i) {
        if (rows[i].size() != K) {
            config_error(line, "restriction block must be square (" + std::to_string(K) + " rows)");
        }
        for (std::size_t j = 0; j < K; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

std::string_view to_string(Deterministic det) noexcept {
    switch (det) {
        case Deterministic::None: return "none";
        case Deterministic::RestrictedConstant: return "restricted_constant";
        case Deterministic::UnrestrictedConstant: return "unrestricted_constant";
    }
    return "unknown";
}

Deterministic parse_deterministic(const std::string& text) {
    if (text == "none") return Deterministic::None;
    if (text == "restricted_constant") return Deterministic::RestrictedConstant;
    if (text == "unrestricted_constant") return Deterministic::UnrestrictedConstant;
    throw Error(ErrorCode::ConfigError, "unknown deterministic case '" + text + "'");
}

PipelineConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
    PipelineConfig cfg;
    RoleMapping roles;
    int n_roles = 0;
    std::vector<std::vector<arma::uword>> b_rows;
    std::vector<std::vector<arma::uword>> xb_rows;
    bool in_block = false;
    bool had_block = false;
    std::size_t block_line = 0;

    std::stringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line == "[restrictions]") {
            if (had_block) config_error(line_no, "only one restriction block is allowed");
            in_block = true;
            had_block = true;
            block_line = line_no;
            continue;
        }
        if (line == "[end]") {
            if (!in_block) config_error(line_no, "[end] without [restrictions]");
            in_block = false;
            continue;
        }
        if (in_block) {
            parse_pattern_row(line, line_no, b_rows, xb_rows);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) config_error(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "data") cfg.data = base_dir / value;
        else if (key == "year_column") cfg.year_column = value;
        else if (key == "role.output") { roles.output = value; ++n_roles; }
        else if (key == "role.employment") { roles.employment = value; ++n_roles; }
        else if (key == "role.wage") { roles.wage = value; ++n_roles; }
        else if (key == "role.price") { roles.price = value; ++n_roles; }
        else if (key == "role.unemployment") { roles.unemployment = value; ++n_roles; }
        else if (key == "log_transform") cfg.log_transform = parse_bool(value, line_no, key);
        else if (key == "deterministic") cfg.deterministic = parse_deterministic(value);
        else if (key == "max_p") cfg.max_p = parse_number<std::size_t>(value, line_no, key);
        else if (key == "criterion") {
            if (value == "sc") cfg.criterion = InfoCriterion::Sc;
            else if (value == "aic") cfg.criterion = InfoCriterion::Aic;
            else if (value == "hq") cfg.criterion = InfoCriterion::Hq;
            else config_error(line_no, "criterion must be sc, aic or hq");
        }
        else if (key == "lag") cfg.lag = parse_number<std::size_t>(value, line_no, key);
        else if (key == "rank") cfg.rank = parse_number<std::size_t>(value, line_no, key);
        else if (key == "significance") {
            if (value == "5") cfg.significance = Significance::FivePercent;
            else if (value == "1") cfg.significance = Significance::OnePercent;
            else config_error(line_no, "significance must be 5 or 1");
        }
        else if (key == "adf_max_lags") cfg.adf_max_lags = parse_number<std::size_t>(value, line_no, key);
        else if (key == "beta_restriction") {
            if (value != "none" && value != "wage_setting") config_error(line_no, "unknown beta_restriction");
            cfg.beta_restriction = value;
        }
        else if (key == "impose_beta_restriction") cfg.impose_beta_restriction = parse_bool(value, line_no, key);
        else if (key == "bootstrap_reps") cfg.bootstrap_reps = parse_number<int>(value, line_no, key);
        else if (key == "bootstrap_threads") cfg.bootstrap_threads = parse_number<unsigned>(value, line_no, key);
        else if (key == "identify_restarts") cfg.identify_restarts = parse_number<int>(value, line_no, key);
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(value, line_no, key);
        else if (key == "out_dir") cfg.out_dir = base_dir / value;
        else if (key == "irf_horizon") cfg.irf_horizon = parse_number<arma::uword>(value, line_no, key);
        else if (key == "fevd_horizons") {
            cfg.fevd_horizons.clear();
            for (const auto& h : split(value, ',')) {
                cfg.fevd_horizons.push_back(parse_number<arma::uword>(h, line_no, key));
            }
        }
        else if (key == "shock_names") cfg.shock_names = split(value, ',');
        else if (key == "sign_rows") cfg.sign_rows = split(value, ',');
        else config_error(line_no, "unknown key '" + key + "'");
    }
    if (in_block) config_error(block_line, "restriction block is not closed with [end]");
    if (had_block) {
        cfg.b_zero = to_mask(b_rows, block_line);
        cfg.xi_b_zero = to_mask(xb_rows, block_line);
    }
    if (n_roles > 0) {
        if (n_roles != 5) {
            throw Error(ErrorCode::ConfigError, "either all five role.* keys or none");
        }
        cfg.roles = roles;
    }
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot read config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    PipelineConfig cfg = parse_config_text(ss.str(), path.parent_path());
    return cfg;
}

void PipelineConfig::validate() const {
    if (!seed) {
        throw Error(ErrorCode::ConfigError, "seed is mandatory");
    }
    if (data.empty()) {
        throw Error(ErrorCode::ConfigError, "no data file given");
    }
    if (!std::filesystem::exists(data)) {
        throw Error(ErrorCode::ConfigError, "data file " + data.string() + " does not exist");
    }
    if (max_p < 1 || (lag && *lag < 1)) {
        throw Error(ErrorCode::ConfigError, "VAR order must be at least 1");
    }
    if (bootstrap_reps < 0 || bootstrap_reps == 1) {
        throw Error(ErrorCode::ConfigError, "bootstrap_reps must be 0 or at least 2");
    }
    if (irf_horizon < 1 || fevd_horizons.empty()) {
        throw Error(ErrorCode::ConfigError, "horizons must be positive");
    }
    for (auto h : fevd_horizons) {
        if (h < 1) throw Error(ErrorCode::ConfigError, "FEVD horizons start at 1");
    }
}

RestrictionPattern PipelineConfig::pattern(const std::vector<std::string>& variables) const {
    const arma::uword K = variables.size();
    RestrictionPattern p;
    if (b_zero) {
        if (b_zero->n_rows != K) {
            throw Error(ErrorCode::ConfigError, "restriction block has " + std::to_string(b_zero->n_rows) +
                                                    " rows for " + std::to_string(K) + " variables");
        }
        p = RestrictionPattern::unrestricted(K);
        p.b_zero = *b_zero;
        p.xi_b_zero = *xi_b_zero;
    } else if (K == 5) {
        p = RestrictionPattern::default_wage_price();
    } else {
        throw Error(ErrorCode::ConfigError, "no restriction block and no default pattern for K = " +
                                                std::to_string(K));
    }
    if (!shock_names.empty()) {
        p.shock_names = shock_names;
    }
    if (!sign_rows.empty()) {
        p.sign_rows.clear();
        for (const auto& name : sign_rows) {
            const auto it = std::find(variables.begin(), variables.end(), name);
            if (it == variables.end()) {
                throw Error(ErrorCode::ConfigError, "sign row '" + name + "' is not a variable");
            }
            p.sign_rows.push_back(static_cast<arma::uword>(it - variables.begin()));
        }
    } else if (b_zero) {
        p.sign_rows.clear();
    }
    p.validate();
    return p;
}

}  // namespace svecm
