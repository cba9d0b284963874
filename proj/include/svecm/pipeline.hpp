#pragma once

#include "svecm/config.hpp"
#include "svecm/dynamics.hpp"
#include "svecm/error.hpp"
#include "svecm/report.hpp"
#include "svecm/svec.hpp"
#include "svecm/vecm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace svecm {

enum class Stage { Load, Adf, Lag, Johansen, BetaTest, Vecm, Identify, Bootstrap, Irf, Fevd, Report };

std::string_view to_string(Stage stage) noexcept;

/// Module error tagged with the pipeline stage that raised it.
class StageError : public std::runtime_error {
public:
    StageError(Stage stage, const Error& cause)
        : std::runtime_error("stage " + std::string(to_string(stage)) + ": " + cause.what()),
          stage_(stage),
          code_(cause.code()) {}
    [[nodiscard]] Stage stage() const noexcept { return stage_; }
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    Stage stage_;
    ErrorCode code_;
};

struct PipelineResult {
    TimePanel system;
    std::vector<AdfRow> adf;
    std::vector<double> lag_criteria;
    std::size_t p = 0;
    std::optional<JohansenResult> johansen;
    std::size_t rank = 0;
    std::optional<BetaTestResult> beta_test;
    std::optional<VecmModel> vecm;
    std::optional<SvecModel> svec;
    std::optional<BootstrapResult> bootstrap;
    std::optional<IrfResult> irf;
    std::optional<FevdResult> fevd;
    std::string report;
};

/**
 * Runs adf, lag selection, rank tests, the optional beta test, VECM, SVEC
 * identification, bootstrap t-values, IRF and FEVD in that order, stopping
 * after `last`. With write_outputs the report and CSV/SVG artifacts go to
 * config.out_dir; on failure the partial report is written with a FAILED
 * line and a StageError is thrown.
 */
PipelineResult run_pipeline(const PipelineConfig& config, Stage last = Stage::Report, bool write_outputs = true);

}  // namespace svecm
