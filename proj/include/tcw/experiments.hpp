#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tcw/config.hpp"
#include "tcw/stats.hpp"

namespace tcw {

/// A precondition of the experiment kind is not met by the configured model
/// (wrong dimension, theorem not applicable, ...).  Overridable with force.
struct refusal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentReport {
    std::string kind;
    std::vector<TestReport> tests;
    std::vector<std::string> csv_files;  // paths written under output_dir
    std::string config_echo;
    double wall_seconds = 0.0;
    std::size_t path_count = 0;
    bool overall_pass = true;
};

ExperimentReport run_flt(const ExperimentConfig& cfg);
ExperimentReport run_kr(const ExperimentConfig& cfg);
ExperimentReport run_divergence(const ExperimentConfig& cfg);
ExperimentReport run_tau_moment(const ExperimentConfig& cfg);
ExperimentReport run_escape_rate(const ExperimentConfig& cfg);
ExperimentReport run_sde_crosscheck(const ExperimentConfig& cfg);
ExperimentReport run_cauchy_mc(const ExperimentConfig& cfg);

/// Validates preconditions (unless cfg.force), dispatches on kind, and
/// writes report.csv plus per-statistic CSVs into cfg.output_dir.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Precondition check only; throws refusal_error on violation.
void check_preconditions(const ExperimentConfig& cfg);

}  // namespace tcw
