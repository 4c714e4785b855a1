// Command-line runner for the time-change experiment suite.
//
// Exit codes: 0 all asserted thresholds pass, 1 a threshold failed,
// 2 malformed config or I/O error, 3 precondition refusal.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tcw/config.hpp"
#include "tcw/experiments.hpp"
#include "tcw/intensity.hpp"
#include "tcw/octant.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::string> out;
    std::optional<unsigned> workers;
    bool force = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "Experiment config file")->required();
    cmd->add_option("--seed", o.seed, "Override master seed");
    cmd->add_option("--paths", o.paths, "Override path count");
    cmd->add_option("--out", o.out, "Override output directory");
    cmd->add_option("--workers", o.workers, "Override worker count");
    cmd->add_flag("--force", o.force, "Run even if model preconditions fail");
}

int run(tcw::ExperimentKind kind, const CommonOpts& o) {
    tcw::ExperimentConfig cfg;
    try {
        cfg = tcw::load_config(o.config_path);
    } catch (const tcw::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (cfg.kind != kind) {
        std::cerr << "config error: " << o.config_path << ": config kind '"
                  << tcw::to_string(cfg.kind) << "' does not match subcommand '"
                  << tcw::to_string(kind) << "'\n";
        return 2;
    }
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.paths) cfg.path_count = *o.paths;
    if (o.out) cfg.output_dir = *o.out;
    if (o.workers) cfg.workers = *o.workers;
    cfg.force = o.force;
    if (const char* env = std::getenv("TCW_OUTPUT_DIR"); env && !o.out)
        cfg.output_dir = env;

    try {
        const auto report = tcw::run_experiment(cfg);
        for (const auto& t : report.tests)
            std::cout << (t.pass ? "[pass] " : "[FAIL] ") << t.name << " = " << t.value
                      << (t.threshold != 0.0 ? " (threshold " + std::to_string(t.threshold) + ")"
                                             : "")
                      << "\n";
        std::cout << report.kind << ": " << (report.overall_pass ? "PASS" : "FAIL") << " ("
                  << report.path_count << " paths, " << report.wall_seconds << " s), outputs in "
                  << cfg.output_dir << "\n";
        return report.overall_pass ? 0 : 1;
    } catch (const tcw::refusal_error& e) {
        std::cerr << "refused: " << e.what() << " (use --force to override)\n";
        return 3;
    } catch (const tcw::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}

int run_validate(const CommonOpts& o) {
    tcw::ExperimentConfig cfg;
    try {
        cfg = tcw::load_config(o.config_path);
    } catch (const tcw::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    const auto rep = tcw::validate_assumptions(cfg.model);
    std::cout << rep.summary() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and statistical checks for time-changed Wiener processes"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        tcw::ExperimentKind kind;
        const char* help;
    };
    const Sub subs[] = {
        {"flt", tcw::ExperimentKind::flt,
         "Compare the normalized time-changed process with the limit process"},
        {"kr", tcw::ExperimentKind::kr,
         "Planar normalized occupation functional against the Exp(1) law"},
        {"divergence", tcw::ExperimentKind::divergence,
         "Growth of the additive functional S_B over time"},
        {"tau-moment", tcw::ExperimentKind::tau_moment,
         "Expectation bound for the inverse clock tau_t"},
        {"escape-rate", tcw::ExperimentKind::escape_rate,
         "Polynomial escape of the Wiener norm (d >= 3)"},
        {"sde-crosscheck", tcw::ExperimentKind::sde_crosscheck,
         "Euler scheme of the limit SDE against the limit process"},
        {"cauchy", tcw::ExperimentKind::cauchy_mc,
         "Monte Carlo solution of the associated Cauchy problem"},
    };

    std::vector<CommonOpts> opts(std::size(subs) + 1);
    std::vector<std::pair<CLI::App*, std::size_t>> cmds;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* c = app.add_subcommand(subs[i].name, subs[i].help);
        add_common(c, opts[i]);
        cmds.emplace_back(c, i);
    }
    CLI::App* validate =
        app.add_subcommand("validate", "Report which assumptions hold and which limit regimes apply");
    add_common(validate, opts.back());

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return run_validate(opts.back());
    for (const auto& [cmd, i] : cmds)
        if (cmd->parsed()) return run(subs[i].kind, opts[i]);
    return 2;
}
