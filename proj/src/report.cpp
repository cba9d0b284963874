#include "svecm/report.hpp"

#include "svecm/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace svecm {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::string shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string significance_stars(double t) {
    const double a = std::abs(t);
    if (a >= 2.576) return "***";
    if (a >= 1.96) return "**";
    if (a >= 1.645) return "*";
    return "";
}

std::vector<double> round_shares(const arma::rowvec& shares, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const std::size_t n = shares.n_elem;
    std::vector<long long> units(n);
    std::vector<double> remainder(n);
    long long floor_sum = 0;
    double exact_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double scaled = shares(j) * scale;
        units[j] = static_cast<long long>(std::floor(scaled));
        remainder[j] = scaled - static_cast<double>(units[j]);
        floor_sum += units[j];
        exact_sum += scaled;
    }
    const long long target = std::llround(exact_sum);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (long long k = 0; k < target - floor_sum && k < static_cast<long long>(n); ++k) {
        ++units[order[static_cast<std::size_t>(k)]];
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = static_cast<double>(units[j]) / scale;
    }
    return out;
}

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pretty_name(const std::string& name) {
    if (name == "y_n") return "(y - n)";
    if (name == "w_p") return "(w - p)";
    return name;
}

}  // namespace

std::string integration_verdict(const AdfRow& row) {
    if (row.level.rejects(AdfLevel::FivePercent)) {
        return "I(0)";
    }
    return row.difference.rejects(AdfLevel::FivePercent) ? "I(1)" : "I(2+)";
}

std::string render_adf_table(const std::vector<AdfRow>& rows) {
    std::ostringstream os;
    os << "Unit-root tests (ADF, constant)\n";
    os << pad_right("variable", 10) << pad_left("level", 10) << pad_left("lags", 6) << pad_left("5% cv", 10)
       << pad_left("diff", 10) << pad_left("lags", 6) << pad_left("5% cv", 10) << pad_left("order", 8) << "\n";
    for (const auto& r : rows) {
        os << pad_right(r.variable, 10) << pad_left(fixed(r.level.statistic, 3), 10)
           << pad_left(std::to_string(r.level.lags_used), 6)
           << pad_left(fixed(r.level.critical_values[1], 3), 10) << pad_left(fixed(r.difference.statistic, 3), 10)
           << pad_left(std::to_string(r.difference.lags_used), 6)
           << pad_left(fixed(r.difference.critical_values[1], 3), 10) << pad_left(integration_verdict(r), 8)
           << "\n";
    }
    return os.str();
}

std::string render_rank_table(const RankTestResult& res) {
    std::ostringstream os;
    os << "Cointegration rank tests\n";
    os << pad_left("eigenvalue", 11) << pad_left("H0", 8) << pad_left("trace", 10) << pad_left("5%", 9)
       << pad_left("1%", 9) << pad_left("S&L", 10) << pad_left("5%", 9) << pad_left("1%", 9) << "\n";
    for (std::size_t r = 0; r < res.trace_stats.size(); ++r) {
        os << pad_left(fixed(res.eigenvalues(r), 4), 11) << pad_left("r<=" + std::to_string(r), 8)
           << pad_left(fixed(res.trace_stats[r], 2), 10) << pad_left(fixed(res.trace_critical[r].five, 2), 9)
           << pad_left(fixed(res.trace_critical[r].one, 2), 9);
        if (r < res.sl_stats.size()) {
            os << pad_left(fixed(res.sl_stats[r], 2), 10) << pad_left(fixed(res.sl_critical[r].five, 2), 9)
               << pad_left(fixed(res.sl_critical[r].one, 2), 9);
        }
        os << "\n";
    }
    os << "selected rank: " << res.rank_five << " at 5%, " << res.rank_one << " at 1%\n";
    return os.str();
}

std::string render_relation(const arma::vec& beta, const std::vector<std::string>& names) {
    // solve for the real wage when it enters, otherwise for the largest coefficient
    arma::uword lhs = arma::index_max(arma::abs(beta));
    for (arma::uword i = 0; i < names.size(); ++i) {
        if (names[i] == "w_p" && std::abs(beta(i)) > 1e-12) {
            lhs = i;
            break;
        }
    }
    std::ostringstream os;
    os << pretty_name(names[lhs]) << " =";
    bool first = true;
    for (arma::uword i = 0; i < beta.n_elem; ++i) {
        if (i == lhs) continue;
        const double c = -beta(i) / beta(lhs);
        if (std::abs(c) < 5e-5) continue;
        os << (c < 0 ? (first ? " -" : " - ") : (first ? " " : " + ")) << fixed(std::abs(c), 4) << " "
           << pretty_name(names[i]);
        first = false;
    }
    if (first) {
        os << " 0";
    }
    return os.str();
}

std::string render_impact_table(const std::string& title, const arma::mat& values, const arma::mat& tvalues,
                                const arma::umat& zero_mask, const std::vector<std::string>& rows,
                                const std::vector<std::string>& shocks) {
    const std::size_t w = 14;
    std::ostringstream os;
    os << title << "\n" << pad_right("", 10);
    for (const auto& s : shocks) os << pad_left(s, w);
    os << "\n";
    for (arma::uword i = 0; i < values.n_rows; ++i) {
        os << pad_right(rows[i], 10);
        for (arma::uword j = 0; j < values.n_cols; ++j) {
            os << pad_left(zero_mask(i, j) ? "0" : fixed(values(i, j), 4), w);
        }
        os << "\n";
        if (!tvalues.is_empty()) {
            os << pad_right("", 10);
            for (arma::uword j = 0; j < values.n_cols; ++j) {
                const std::string cell =
                    zero_mask(i, j) ? "" : "(" + fixed(tvalues(i, j), 2) + ")" + significance_stars(tvalues(i, j));
                os << pad_left(cell, w);
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string render_matrix(const std::string& title, const arma::mat& values, const std::vector<std::string>& rows,
                          const std::vector<std::string>& cols) {
    std::ostringstream os;
    os << title << "\n" << pad_right("", 10);
    for (const auto& c : cols) os << pad_left(c, 12);
    os << "\n";
    for (arma::uword i = 0; i < values.n_rows; ++i) {
        os << pad_right(rows[i], 10);
        for (arma::uword j = 0; j < values.n_cols; ++j) {
            os << pad_left(fixed(values(i, j), 4), 12);
        }
        os << "\n";
    }
    return os.str();
}

std::string render_fevd_table(const FevdResult& fevd, arma::uword variable, const std::string& variable_name,
                              const std::vector<std::string>& shocks) {
    std::ostringstream os;
    os << "Variance decomposition of " << variable_name << "\n" << pad_left("period", 8);
    for (const auto& s : shocks) os << pad_left(s, 8);
    os << "\n";
    for (std::size_t k = 0; k < fevd.horizons.size(); ++k) {
        os << pad_left(std::to_string(fevd.horizons[k]), 8);
        for (double v : round_shares(fevd.shares[k].row(variable), 2)) {
            os << pad_left(fixed(v, 2), 8);
        }
        os << "\n";
    }
    return os.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void write_matrix_csv(const std::filesystem::path& path, const arma::mat& values, const std::vector<std::string>& rows,
                      const std::vector<std::string>& cols, const std::string& corner) {
    std::vector<std::string> header{corner};
    header.insert(header.end(), cols.begin(), cols.end());
    std::vector<std::vector<std::string>> body;
    for (arma::uword i = 0; i < values.n_rows; ++i) {
        std::vector<std::string> r{rows[i]};
        for (arma::uword j = 0; j < values.n_cols; ++j) {
            r.push_back(shortest(values(i, j)));
        }
        body.push_back(std::move(r));
    }
    write_csv(path, header, body);
}

void write_svg_line(const std::filesystem::path& path, const std::string& title, const arma::vec& y) {
    const double width = 480.0;
    const double height = 300.0;
    const double margin = 40.0;
    double lo = std::min(0.0, y.is_empty() ? 0.0 : y.min());
    double hi = std::max(0.0, y.is_empty() ? 0.0 : y.max());
    if (hi - lo < 1e-300) {
        hi = lo + 1.0;
    }
    const double n = std::max<double>(1.0, static_cast<double>(y.n_elem) - 1.0);
    auto px = [&](double i) { return margin + (width - 2 * margin) * i / n; };
    auto py = [&](double v) { return height - margin - (height - 2 * margin) * (v - lo) / (hi - lo); };

    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">" << title
        << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << fixed(py(0.0), 2) << "\" x2=\"" << width - margin << "\" y2=\""
        << fixed(py(0.0), 2) << "\" stroke=\"#999\"/>\n";
    out << "<text x=\"4\" y=\"" << fixed(py(hi) + 4, 2) << "\" font-size=\"10\">" << fixed(hi, 4) << "</text>\n";
    out << "<text x=\"4\" y=\"" << fixed(py(lo) + 4, 2) << "\" font-size=\"10\">" << fixed(lo, 4) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\" points=\"";
    for (arma::uword i = 0; i < y.n_elem; ++i) {
        out << (i ? " " : "") << fixed(px(static_cast<double>(i)), 2) << "," << fixed(py(y(i)), 2);
    }
    out << "\"/>\n</svg>\n";
}

}  // namespace svecm
