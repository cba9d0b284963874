#include "svecm/dataset.hpp"

#include "svecm/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace svecm {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == ".";
}

std::string location(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

arma::uword TimePanel::column(const std::string& name) const {
    for (arma::uword j = 0; j < names.size(); ++j) {
        if (names[j] == name) {
            return j;
        }
    }
    throw Error(ErrorCode::MissingRole, "no column named '" + name + "'");
}

void TimePanel::validate() const {
    if (names.size() != values.n_cols || years.size() != values.n_rows) {
        throw Error(ErrorCode::InvalidArgument, "panel dimensions disagree with names/years");
    }
    for (std::size_t t = 1; t < years.size(); ++t) {
        if (years[t] != years[t - 1] + 1) {
            throw Error(ErrorCode::NonConsecutiveYears,
                        "year " + std::to_string(years[t]) + " follows " + std::to_string(years[t - 1]));
        }
    }
    if (!values.is_finite()) {
        throw Error(ErrorCode::MissingValue, "panel contains non-finite values");
    }
}

TimePanel load_csv(const std::filesystem::path& path, const std::string& year_column) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseFailure, "empty file " + path.string());
    }
    const auto header = split_commas(line);
    std::size_t year_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == year_column) {
            year_idx = j;
        }
    }
    if (year_idx == header.size()) {
        throw Error(ErrorCode::ParseFailure, "year column '" + year_column + "' not in header");
    }

    TimePanel panel;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != year_idx) {
            panel.names.push_back(header[j]);
        }
    }
    std::vector<std::vector<double>> rows;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto cells = split_commas(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::ParseFailure,
                        location(row_no, cells.size()) + ": expected " + std::to_string(header.size()) + " cells");
        }
        std::vector<double> row;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const auto& cell = cells[j];
            if (is_missing(cell)) {
                throw Error(ErrorCode::MissingValue, location(row_no, j + 1));
            }
            if (j == year_idx) {
                int year = 0;
                const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), year);
                if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
                    throw Error(ErrorCode::ParseFailure, location(row_no, j + 1) + ": bad year '" + cell + "'");
                }
                panel.years.push_back(year);
                continue;
            }
            double v = 0.0;
            const char* begin = cell.data();
            if (*begin == '+') {
                ++begin;
            }
            const auto res = std::from_chars(begin, cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
                throw Error(ErrorCode::ParseFailure, location(row_no, j + 1) + ": bad number '" + cell + "'");
            }
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::MissingValue, location(row_no, j + 1));
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    panel.values.set_size(rows.size(), panel.names.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t j = 0; j < rows[t].size(); ++j) {
            panel.values(t, j) = rows[t][j];
        }
    }
    panel.validate();
    return panel;
}

void save_csv(const TimePanel& panel, const std::filesystem::path& path, const std::string& year_column) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << year_column;
    for (const auto& name : panel.names) {
        out << ',' << name;
    }
    out << '\n';
    for (arma::uword t = 0; t < panel.n_obs(); ++t) {
        out << panel.years[t];
        for (arma::uword j = 0; j < panel.n_vars(); ++j) {
            out << ',' << format_double(panel.values(t, j));
        }
        out << '\n';
    }
}

TimePanel build_system(const TimePanel& panel, const RoleMapping& roles, bool log_levels) {
    const auto col = [&](const std::string& role, const std::string& name) -> arma::vec {
        if (name.empty()) {
            throw Error(ErrorCode::MissingRole, "role '" + role + "' is not mapped");
        }
        for (arma::uword j = 0; j < panel.names.size(); ++j) {
            if (panel.names[j] == name) {
                return panel.values.col(j);
            }
        }
        throw Error(ErrorCode::MissingRole, "role '" + role + "' column '" + name + "' not found");
    };
    const auto logged = [&](const std::string& role, const std::string& name) -> arma::vec {
        arma::vec v = col(role, name);
        if (!log_levels) {
            return v;
        }
        for (arma::uword t = 0; t < v.n_elem; ++t) {
            if (!(v(t) > 0.0)) {
                throw Error(ErrorCode::NonPositiveForLog,
                            "column '" + name + "' row " + std::to_string(t + 1) + " is not positive");
            }
        }
        return arma::log(v);
    };

    const arma::vec y = logged("output", roles.output);
    const arma::vec n = logged("employment", roles.employment);
    const arma::vec w = logged("wage", roles.wage);
    const arma::vec p = logged("price", roles.price);
    const arma::vec u = col("unemployment", roles.unemployment);

    TimePanel out;
    out.names = kSystemColumns;
    out.years = panel.years;
    out.values = arma::join_rows(arma::join_rows(p, y - n, w - p), arma::join_rows(n, u));
    return out;
}

}  // namespace svecm
