#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcw/intensity.hpp"

namespace tcw {

enum class ExperimentKind {
    flt,
    kr,
    divergence,
    tau_moment,
    escape_rate,
    sde_crosscheck,
    cauchy_mc
};

const char* to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_kind_from(const std::string& name);

enum class KrFunction { disc, bump };
enum class Payoff { coordinate, sqnorm, bump };

/// Declarative experiment input.  Defaults mirror the acceptance thresholds;
/// overriding a threshold is allowed and flagged in the report.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::flt;
    IntensityModel model;

    // grid
    double step = 0.01;
    double horizon = 1.0;
    double cap = 1e12;
    int extension_budget = 40;

    // monte carlo
    std::size_t path_count = 10000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;

    // kind-specific
    std::vector<double> eval_times = {1.0};  // flt, sde_crosscheck, tau_moment, cauchy
    std::vector<double> n_values = {1.0, 10.0, 100.0};      // flt
    std::vector<double> t_values;                           // kr, divergence, escape
    double threshold = 0.05;                                // KS threshold
    bool threshold_overridden = false;
    KrFunction kr_function = KrFunction::disc;              // kr
    double kr_radius = 1.0;                                 // kr disc radius / bump scale
    double exceed_level = 10.0;                             // divergence: M
    double min_fraction = 0.99;                             // divergence / escape
    Payoff payoff = Payoff::sqnorm;                         // cauchy
    std::size_t payoff_coordinate = 0;                      // cauchy, 0-based
    double payoff_scale = 1.0;                              // cauchy bump
    std::vector<std::vector<double>> start_points;          // cauchy
    std::vector<double> expected;  // cauchy: optional, one per (start, time)
    bool force = false;

    std::string output_dir = "out";

    /// Echo as a config file body; re-parsing it reproduces the run.
    [[nodiscard]] std::string echo() const;
};

/// Parses the flat key/value section format.  Errors carry "<file>:<line>:".
ExperimentConfig parse_config_text(const std::string& text, const std::string& filename);
ExperimentConfig load_config(const std::string& path);

}  // namespace tcw
