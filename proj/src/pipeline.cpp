#include "svecm/pipeline.hpp"

#include "svecm/error.hpp"
#include "svecm/linalg.hpp"
#include "svecm/rng.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace svecm {

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::Load: return "load";
        case Stage::Adf: return "adf";
        case Stage::Lag: return "lag";
        case Stage::Johansen: return "johansen";
        case Stage::BetaTest: return "beta_test";
        case Stage::Vecm: return "vecm";
        case Stage::Identify: return "identify";
        case Stage::Bootstrap: return "bootstrap";
        case Stage::Irf: return "irf";
        case Stage::Fevd: return "fevd";
        case Stage::Report: return "report";
    }
    return "unknown";
}

namespace {

std::vector<std::string> display_names(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names) {
        if (n == "y_n") out.emplace_back("y-n");
        else if (n == "w_p") out.emplace_back("w-p");
        else out.push_back(n);
    }
    return out;
}

std::string criterion_name(InfoCriterion c) {
    switch (c) {
        case InfoCriterion::Aic: return "AIC";
        case InfoCriterion::Sc: return "SC";
        case InfoCriterion::Hq: return "HQ";
    }
    return "?";
}

// Columns for estimation: the built system when roles are given, otherwise
// the file's columns in order.
TimePanel prepare_system(const PipelineConfig& cfg) {
    const TimePanel raw = load_csv(cfg.data, cfg.year_column);
    if (cfg.roles) {
        return build_system(raw, *cfg.roles, cfg.log_transform);
    }
    raw.validate();
    return raw;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << text;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg, Stage last, bool write_outputs) {
    PipelineResult res;
    std::ostringstream rep;
    Stage current = Stage::Load;
    const std::filesystem::path out = cfg.out_dir;
    auto wants = [&](Stage s) { return static_cast<int>(s) <= static_cast<int>(last); };
    auto finish = [&]() {
        res.report = rep.str();
        if (write_outputs) {
            write_text(out / "report.txt", res.report);
        }
    };

    try {
        // ------------------------------------------------------------ load
        cfg.validate();
        res.system = prepare_system(cfg);
        const TimePanel& sys = res.system;
        const std::size_t K = sys.n_vars();
        const auto labels = display_names(sys.names);
        if (write_outputs) {
            std::filesystem::create_directories(out);
            save_csv(sys, out / "system.csv", cfg.year_column);
        }
        rep << "SVECM report\n============\n";
        rep << "data: " << cfg.data.filename().string() << ", T = " << sys.n_obs() << ", K = " << K << ", years "
            << sys.years.front() << "-" << sys.years.back() << "\n";
        rep << "deterministic: " << to_string(cfg.deterministic) << ", seed: " << *cfg.seed << "\n\n";

        // ------------------------------------------------------------- adf
        if (!wants(Stage::Adf)) return finish(), res;
        current = Stage::Adf;
        std::vector<std::vector<std::string>> adf_rows;
        for (arma::uword k = 0; k < K; ++k) {
            const arma::vec x = sys.values.col(k);
            const arma::vec dx = arma::diff(x);
            AdfRow row{labels[k], adf_test(std::span<const double>(x.memptr(), x.n_elem), AdfDeterministic::Constant,
                                           cfg.adf_max_lags, LagSelection::Sc),
                       adf_test(std::span<const double>(dx.memptr(), dx.n_elem), AdfDeterministic::Constant,
                                cfg.adf_max_lags, LagSelection::Sc)};
            adf_rows.push_back({sys.names[k], shortest(row.level.statistic), std::to_string(row.level.lags_used),
                                shortest(row.level.critical_values[1]), shortest(row.difference.statistic),
                                std::to_string(row.difference.lags_used),
                                shortest(row.difference.critical_values[1]), integration_verdict(row)});
            res.adf.push_back(std::move(row));
        }
        rep << render_adf_table(res.adf) << "\n";
        if (write_outputs) {
            write_csv(out / "adf.csv",
                      {"variable", "level_stat", "level_lags", "level_cv5", "diff_stat", "diff_lags", "diff_cv5",
                       "order"},
                      adf_rows);
        }

        // ------------------------------------------------------------- lag
        if (!wants(Stage::Lag)) return finish(), res;
        current = Stage::Lag;
        res.lag_criteria = lag_criteria(sys, cfg.max_p, cfg.criterion);
        res.p = cfg.lag ? *cfg.lag
                        : static_cast<std::size_t>(std::min_element(res.lag_criteria.begin(), res.lag_criteria.end()) -
                                                   res.lag_criteria.begin()) + 1;
        rep << "VAR order (" << criterion_name(cfg.criterion) << ", max " << cfg.max_p << "):";
        std::vector<std::vector<std::string>> lag_rows;
        for (std::size_t i = 0; i < res.lag_criteria.size(); ++i) {
            rep << " p=" << i + 1 << ": " << fixed(res.lag_criteria[i], 4);
            lag_rows.push_back({std::to_string(i + 1), shortest(res.lag_criteria[i])});
        }
        rep << "\nselected p = " << res.p << (cfg.lag ? " (override)" : "") << "\n\n";
        if (write_outputs) {
            write_csv(out / "lag_criteria.csv", {"p", criterion_name(cfg.criterion)}, lag_rows);
        }

        // -------------------------------------------------------- johansen
        if (!wants(Stage::Johansen)) return finish(), res;
        current = Stage::Johansen;
        res.johansen = johansen(sys, res.p, cfg.deterministic);
        const RankTestResult& rt = res.johansen->test;
        res.rank = cfg.rank ? *cfg.rank : rt.selected_rank(cfg.significance);
        rep << render_rank_table(rt);
        rep << "rank used: " << res.rank << (cfg.rank ? " (override)" : "") << "\n\n";
        if (write_outputs) {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t r = 0; r < K; ++r) {
                rows.push_back({std::to_string(r), shortest(rt.eigenvalues(r)), shortest(rt.trace_stats[r]),
                                shortest(rt.trace_critical[r].five), shortest(rt.trace_critical[r].one),
                                shortest(rt.sl_stats[r]), shortest(rt.sl_critical[r].five),
                                shortest(rt.sl_critical[r].one)});
            }
            write_csv(out / "rank_test.csv",
                      {"h0_rank", "eigenvalue", "trace", "trace_cv5", "trace_cv1", "sl", "sl_cv5", "sl_cv1"}, rows);
        }

        // ------------------------------------------------------- beta test
        if (!wants(Stage::BetaTest)) return finish(), res;
        current = Stage::BetaTest;
        std::optional<BetaRestriction> restriction;
        if (cfg.beta_restriction == "wage_setting") {
            restriction = BetaRestriction::wage_setting();
            if (restriction->H.n_rows != K) {
                throw Error(ErrorCode::InconsistentRestriction, "wage_setting needs the five-variable system");
            }
            if (res.rank < 1 || res.rank >= K) {
                // nothing to test; the vecm stage reports the bad rank
                rep << "Restriction on beta: skipped at rank " << res.rank << "\n\n";
                restriction.reset();
            }
        }
        if (restriction) {
            res.beta_test = test_beta_restriction(res.johansen->decomposition, res.rank, *restriction);
            const auto& bt = *res.beta_test;
            rep << "Restriction on beta (" << restriction->description << ")\n";
            rep << "LR = " << fixed(bt.lr, 4) << ", df = " << bt.df << ", p-value = " << fixed(bt.p_value, 4) << "\n";
            rep << "restricted relation: " << render_relation(bt.beta.col(0), sys.names) << "\n\n";
            if (write_outputs) {
                write_csv(out / "beta_test.csv", {"lr", "df", "p_value"},
                          {{shortest(bt.lr), std::to_string(bt.df), shortest(bt.p_value)}});
            }
        }

        // ------------------------------------------------------------ vecm
        if (!wants(Stage::Vecm)) return finish(), res;
        current = Stage::Vecm;
        res.vecm = fit_vecm(sys, res.p, res.rank, cfg.deterministic,
                            cfg.impose_beta_restriction ? restriction : std::nullopt);
        const VecmModel& m = *res.vecm;
        std::vector<std::string> ce_names;
        for (std::size_t i = 0; i < m.r; ++i) ce_names.push_back("ce" + std::to_string(i + 1));
        arma::mat beta_display = m.beta;
        const auto wp = std::find(sys.names.begin(), sys.names.end(), "w_p");
        if (m.r == 1 && wp != sys.names.end()) {
            const double c = m.beta(static_cast<arma::uword>(wp - sys.names.begin()), 0);
            if (std::abs(c) > 1e-12) beta_display /= c;
        }
        rep << "VECM (p = " << m.p << ", r = " << m.r << ", T - p = " << m.n_obs << ")\n";
        rep << render_matrix("beta", beta_display, labels, ce_names);
        rep << render_matrix("alpha", m.alpha, labels, ce_names);
        rep << render_matrix("Sigma_u", m.sigma, labels, labels);
        for (std::size_t i = 0; i < m.r; ++i) {
            rep << "relation " << i + 1 << ": " << render_relation(m.beta.col(i), sys.names) << "\n";
        }
        rep << "\n";
        if (write_outputs) {
            write_matrix_csv(out / "beta.csv", beta_display, sys.names, ce_names);
            write_matrix_csv(out / "alpha.csv", m.alpha, sys.names, ce_names);
            write_matrix_csv(out / "sigma.csv", m.sigma, sys.names, sys.names);
            for (std::size_t i = 0; i < m.gammas.size(); ++i) {
                write_matrix_csv(out / ("gamma" + std::to_string(i + 1) + ".csv"), m.gammas[i], sys.names,
                                 sys.names);
            }
        }

        // -------------------------------------------------------- identify
        if (!wants(Stage::Identify)) return finish(), res;
        current = Stage::Identify;
        const RestrictionPattern pattern = cfg.pattern(sys.names);
        IdentifyOptions io;
        io.seed = Rng::derive(*cfg.seed, 1);
        io.restarts = cfg.identify_restarts;
        res.svec = identify(m, pattern, io);
        SvecModel& sv = *res.svec;
        const RestrictionCount count = count_restrictions(K, m.r);
        rep << "Identification: " << sv.identification->summary() << "\n";
        rep << "required beyond BB' = Sigma: " << count.total_required << " = " << count.from_transitory
            << " (transitory columns of Xi B) + " << count.extra_permanent << " (among permanent shocks) + "
            << count.extra_transitory << " (among transitory shocks)\n";
        rep << "log-likelihood " << fixed(sv.loglik, 4) << ", " << sv.iterations << " scoring iterations, attempt "
            << sv.attempts << "\n\n";
        if (write_outputs) {
            write_matrix_csv(out / "xi.csv", sv.xi, sys.names, sys.names);
            write_matrix_csv(out / "b.csv", sv.b, sys.names, pattern.shock_names);
            write_matrix_csv(out / "xi_b.csv", sv.xi_b, sys.names, pattern.shock_names);
        }

        // ------------------------------------------------------- bootstrap
        if (wants(Stage::Bootstrap) && cfg.bootstrap_reps > 0) {
            current = Stage::Bootstrap;
            BootstrapOptions bo;
            bo.reps = cfg.bootstrap_reps;
            bo.seed = Rng::derive(*cfg.seed, 2);
            bo.threads = cfg.bootstrap_threads;
            res.bootstrap = bootstrap_tvalues(m, sv, bo);
            sv.tvalues_b = res.bootstrap->tvalues_b;
            sv.tvalues_xi_b = res.bootstrap->tvalues_xi_b;
            rep << "bootstrap: " << res.bootstrap->reps << " replications, " << res.bootstrap->failed
                << " failed\n";
            if (write_outputs) {
                write_matrix_csv(out / "tvalues_b.csv", sv.tvalues_b, sys.names, pattern.shock_names);
                write_matrix_csv(out / "tvalues_xi_b.csv", sv.tvalues_xi_b, sys.names, pattern.shock_names);
            }
        }
        rep << render_impact_table("Short-run impact matrix B", sv.b, sv.tvalues_b, pattern.b_zero, labels,
                                   pattern.shock_names)
            << "\n";
        rep << render_impact_table("Long-run impact matrix Xi B", sv.xi_b, sv.tvalues_xi_b, pattern.xi_b_zero, labels,
                                   pattern.shock_names)
            << "\n";

        // ------------------------------------------------------------- irf
        if (!wants(Stage::Irf)) return finish(), res;
        current = Stage::Irf;
        res.irf = irf(sv, m, cfg.irf_horizon);
        const arma::cube& theta = res.irf->responses;
        if (write_outputs) {
            for (arma::uword j = 0; j < K; ++j) {
                std::vector<std::vector<std::string>> rows;
                for (arma::uword h = 0; h < theta.n_slices; ++h) {
                    std::vector<std::string> r{std::to_string(h)};
                    for (arma::uword i = 0; i < K; ++i) r.push_back(shortest(theta(i, j, h)));
                    rows.push_back(std::move(r));
                }
                std::vector<std::string> header{"horizon"};
                header.insert(header.end(), sys.names.begin(), sys.names.end());
                write_csv(out / ("irf_" + pattern.shock_names[j] + ".csv"), header, rows);
                for (arma::uword i = 0; i < K; ++i) {
                    const arma::vec path = arma::vectorise(theta.tube(i, j));
                    write_svg_line(out / ("irf_" + sys.names[i] + "_" + pattern.shock_names[j] + ".svg"),
                                   "response of " + labels[i] + " to " + pattern.shock_names[j], path);
                }
            }
        }
        rep << "impulse responses: horizon " << cfg.irf_horizon << ", files irf_<shock>.csv and "
            << "irf_<variable>_<shock>.svg\n\n";

        // ------------------------------------------------------------ fevd
        if (!wants(Stage::Fevd)) return finish(), res;
        current = Stage::Fevd;
        res.fevd = fevd(sv, m, cfg.fevd_horizons);
        std::vector<std::vector<std::string>> fevd_rows;
        for (arma::uword i = 0; i < K; ++i) {
            rep << render_fevd_table(*res.fevd, i, labels[i], pattern.shock_names) << "\n";
            for (std::size_t k = 0; k < res.fevd->horizons.size(); ++k) {
                for (arma::uword j = 0; j < K; ++j) {
                    fevd_rows.push_back({sys.names[i], std::to_string(res.fevd->horizons[k]), pattern.shock_names[j],
                                         shortest(res.fevd->shares[k](i, j))});
                }
            }
        }
        if (write_outputs) {
            write_csv(out / "fevd.csv", {"variable", "horizon", "shock", "share"}, fevd_rows);
        }
        current = Stage::Report;
        finish();
        return res;
    } catch (const Error& e) {
        rep << "FAILED at stage " << to_string(current) << ": " << e.what() << "\n";
        res.report = rep.str();
        if (write_outputs) {
            try {
                std::filesystem::create_directories(out);
                write_text(out / "report.txt", res.report);
            } catch (const std::exception&) {
                // the stage error below is the one worth reporting
            }
        }
        throw StageError(current, e);
    }
}

}  // namespace svecm
