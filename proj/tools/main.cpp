#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "risklab/experiment.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string out_path;
    std::string learners;
    long reps = -1;
    long long seed = -1;
    int threads = -1;
};

void add_common(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "key=value config file")->required();
    cmd->add_option("--seed", ov.seed, "override config seed");
    cmd->add_option("--reps", ov.reps, "override replication count");
    cmd->add_option("--out", ov.out_path, "override output CSV path");
    cmd->add_option("--learners", ov.learners, "override learner list, e.g. zero,erm");
    cmd->add_option("--threads", ov.threads, "worker threads (0 = hardware)");
}

int load_and_apply(const Overrides& ov, risklab::ExperimentConfig& cfg) {
    try {
        cfg = risklab::load_config(ov.config_path);
    } catch (const risklab::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return risklab::exit_io_error;
    } catch (const risklab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return risklab::exit_config_error;
    }
    if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
    if (ov.reps >= 0) cfg.reps = ov.reps;
    if (!ov.out_path.empty()) cfg.out_path = ov.out_path;
    if (ov.threads >= 0) cfg.threads = ov.threads;
    if (!ov.learners.empty()) {
        cfg.learners.clear();
        std::string item;
        for (char ch : ov.learners + ",") {
            if (ch == ',') {
                if (!item.empty()) cfg.learners.push_back(item);
                item.clear();
            } else {
                item += ch;
            }
        }
    }
    return risklab::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"risklab: excess-risk experiments for norm-bounded linear prediction"};
    app.require_subcommand(1);

    Overrides run_ov, sweep_ov;
    std::string suite;
    int verify_threads = 0;

    CLI::App* run = app.add_subcommand("run", "run the configured experiment, write CSV");
    add_common(run, run_ov);
    CLI::App* sweep = app.add_subcommand("sweep", "run across m values and append a rate fit");
    add_common(sweep, sweep_ov);
    CLI::App* verify = app.add_subcommand("verify", "run a named property suite");
    verify->add_option("suite", suite,
                       "one of lemma1, divergence, optima, lower-bounds, rates, all")
        ->required();
    verify->add_option("--threads", verify_threads, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : risklab::exit_config_error;
    }

    if (run->parsed()) {
        risklab::ExperimentConfig cfg;
        if (int rc = load_and_apply(run_ov, cfg); rc != risklab::exit_ok) return rc;
        return cfg.experiment == "sweep" ? risklab::run_sweep(cfg) : risklab::run_experiment(cfg);
    }
    if (sweep->parsed()) {
        risklab::ExperimentConfig cfg;
        if (int rc = load_and_apply(sweep_ov, cfg); rc != risklab::exit_ok) return rc;
        return risklab::run_sweep(cfg);
    }
    return risklab::run_verify(suite, std::cout, verify_threads);
}
