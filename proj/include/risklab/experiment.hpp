#pragma once
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace risklab {

// Stable exit-status contract for scripting.
enum ExitStatus : int {
    exit_ok = 0,
    exit_verify_failed = 1,
    exit_config_error = 2,
    exit_io_error = 3,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;  // thm2 | thm3 | sweep | envelope
    double Y = 1.0;
    double B = 2.0;
    int d = 0;  // thm3/sweep; 0 = omitted
    std::vector<long> m_values;
    std::vector<std::string> learners;  // subset of zero,vaw,ogd,erm
    long reps = 100;
    std::uint64_t seed = 0;
    double vaw_a = 1.0;
    std::string out_path;
    int threads = 0;  // 0 = hardware concurrency
};

// Plain key=value file, '#' comments. Unknown keys and malformed values are
// ConfigError with the offending line number.
ExperimentConfig load_config(const std::string& path);

// Cross-field validation (B >= 2Y for thm2, m_values strictly increasing,
// known learner names, out_path present).
void validate_config(const ExperimentConfig& config);

// Canonical serialization used for the provenance digest in CSV headers.
std::string config_canonical(const ExperimentConfig& config);

// Executes the configured experiment and writes the CSV. Returns an
// ExitStatus; never throws.
int run_experiment(const ExperimentConfig& config);

// The sweep variant: data rows plus a '#'-separated rate-fit summary block.
int run_sweep(const ExperimentConfig& config);

// Named property suite runner; prints one PASS/FAIL line per check.
// Suites: lemma1, divergence, optima, lower-bounds, rates, all.
int run_verify(const std::string& suite, std::ostream& report, int threads = 0);

}  // namespace risklab
