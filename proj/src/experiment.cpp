#include "risklab/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "risklab/harness.hpp"
#include "risklab/verify.hpp"

namespace risklab {

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void line_error(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

// Fixed-format numeric field: 12 significant digits, locale-independent.
std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Row {
    std::string experiment;
    std::string learner;
    double Y, B;
    int d, d_prime;
    long m, reps;
    std::uint64_t seed;
    double mean_excess, half_width_95;
    Envelope env;
};

void write_row(std::ostream& out, const Row& r) {
    out << r.experiment << ',' << r.learner << ',' << fmt_num(r.Y) << ',' << fmt_num(r.B) << ','
        << r.d << ',' << r.d_prime << ',' << r.m << ',' << r.reps << ',' << r.seed << ','
        << fmt_num(r.mean_excess) << ',' << fmt_num(r.half_width_95) << ','
        << fmt_num(r.env.lower) << ',' << fmt_num(r.env.upper) << '\n';
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t learner_idx, std::size_t m_idx) {
    RngStream s = RngStream::substream(master, 1000 * learner_idx + m_idx + 1);
    return s.next_u64();
}

struct CellResults {
    std::vector<Row> rows;
    // mean excess per learner across m, for the sweep fit
    std::vector<std::vector<std::pair<long, double>>> series;
};

CellResults run_cells(const ExperimentConfig& cfg) {
    CellResults out;
    out.series.resize(cfg.learners.size());
    const bool is_thm3 = cfg.experiment == "thm3" || (cfg.experiment == "sweep" && cfg.d > 0);
    for (std::size_t li = 0; li < cfg.learners.size(); ++li) {
        LearnerSpec spec;
        spec.kind = learner_kind_from_name(cfg.learners[li]);
        spec.B = cfg.B;
        spec.Y = cfg.Y;
        spec.vaw_a = cfg.vaw_a;
        for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi) {
            const long m = cfg.m_values[mi];
            const std::uint64_t seed = cell_seed(cfg.seed, li, mi);
            Row row;
            row.experiment = cfg.experiment;
            row.learner = cfg.learners[li];
            row.Y = cfg.Y;
            row.B = cfg.B;
            row.m = m;
            row.seed = seed;
            ExperimentResult res;
            if (is_thm3) {
                res = minimax_thm3(spec, cfg.Y, cfg.B, m, cfg.d, cfg.reps, seed, cfg.threads);
                row.d = cfg.d;
                row.d_prime = thm3_dims(cfg.Y, cfg.B, m, cfg.d).first;
            } else {
                res = minimax_thm2(spec, cfg.Y, cfg.B, m, cfg.reps, seed, cfg.threads);
                row.d = 1;
                row.d_prime = 1;
            }
            row.reps = res.reps;
            row.mean_excess = res.mean_excess;
            row.half_width_95 = res.half_width_95;
            row.env = theoretical_envelope(cfg.Y, cfg.B, row.d, m);
            out.rows.push_back(row);
            out.series[li].push_back({m, res.mean_excess});
        }
    }
    return out;
}

void write_header(std::ostream& out, const ExperimentConfig& cfg) {
    out << "# risklab " << kToolVersion << '\n';
    out << "# config " << digest(config_canonical(cfg)) << '\n';
    out << "experiment,learner,Y,B,d,d_prime,m,reps,seed,mean_excess,half_width_95,"
           "envelope_lower,envelope_upper\n";
}

int guarded(const ExperimentConfig& cfg, const std::function<void(std::ostream&)>& body) {
    try {
        validate_config(cfg);
        std::ofstream out(cfg.out_path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + cfg.out_path);
        body(out);
        out.flush();
        if (!out) throw IoError("write failed: " + cfg.out_path);
        return exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return exit_io_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) line_error(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "experiment") {
                cfg.experiment = value;
            } else if (key == "Y") {
                cfg.Y = std::stod(value);
            } else if (key == "B") {
                cfg.B = std::stod(value);
            } else if (key == "d") {
                cfg.d = std::stoi(value);
            } else if (key == "m_values") {
                cfg.m_values.clear();
                for (const auto& item : split_csv(value)) cfg.m_values.push_back(std::stol(item));
            } else if (key == "learners") {
                cfg.learners = split_csv(value);
            } else if (key == "reps") {
                cfg.reps = std::stol(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(value);
            } else if (key == "vaw_a") {
                cfg.vaw_a = std::stod(value);
            } else if (key == "out_path") {
                cfg.out_path = value;
            } else if (key == "threads") {
                cfg.threads = std::stoi(value);
            } else {
                line_error(lineno, "unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            line_error(lineno, "bad value for '" + key + "'");
        }
    }
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.experiment != "thm2" && cfg.experiment != "thm3" && cfg.experiment != "sweep" &&
        cfg.experiment != "envelope")
        throw ConfigError("experiment must be one of thm2, thm3, sweep, envelope");
    if (!(cfg.Y > 0) || !(cfg.B > 0)) throw ConfigError("Y and B must be positive");
    if (cfg.experiment == "thm2" && cfg.B < 2 * cfg.Y)
        throw ConfigError("thm2 requires B >= 2Y");
    if (cfg.experiment == "thm3" && cfg.d < 1) throw ConfigError("thm3 requires d >= 1");
    if (cfg.m_values.empty()) throw ConfigError("m_values must be nonempty");
    for (std::size_t i = 1; i < cfg.m_values.size(); ++i)
        if (cfg.m_values[i] <= cfg.m_values[i - 1])
            throw ConfigError("m_values must be strictly increasing");
    if (cfg.experiment == "sweep" && cfg.m_values.size() < 2)
        throw ConfigError("sweep requires >= 2 m values");
    if (cfg.experiment != "envelope") {
        if (cfg.learners.empty()) throw ConfigError("learners must be nonempty");
        for (const auto& name : cfg.learners) learner_kind_from_name(name);
        if (cfg.reps < 2) throw ConfigError("reps must be >= 2");
    }
    if (cfg.out_path.empty()) throw ConfigError("out_path is required");
    if (!(cfg.vaw_a > 0)) throw ConfigError("vaw_a must be positive");
}

std::string config_canonical(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "experiment=" << cfg.experiment << ";Y=" << fmt_num(cfg.Y) << ";B=" << fmt_num(cfg.B)
       << ";d=" << cfg.d << ";m=";
    for (long m : cfg.m_values) os << m << ' ';
    os << ";learners=";
    for (const auto& l : cfg.learners) os << l << ' ';
    os << ";reps=" << cfg.reps << ";seed=" << cfg.seed << ";vaw_a=" << fmt_num(cfg.vaw_a);
    return os.str();
}

int run_experiment(const ExperimentConfig& cfg) {
    return guarded(cfg, [&cfg](std::ostream& out) {
        write_header(out, cfg);
        if (cfg.experiment == "envelope") {
            const int d = cfg.d > 0 ? cfg.d : 1;
            for (long m : cfg.m_values) {
                Row row;
                row.experiment = cfg.experiment;
                row.learner = "-";
                row.Y = cfg.Y;
                row.B = cfg.B;
                row.d = d;
                row.d_prime = 0;
                row.m = m;
                row.reps = 0;
                row.seed = cfg.seed;
                row.mean_excess = 0.0;
                row.half_width_95 = 0.0;
                row.env = theoretical_envelope(cfg.Y, cfg.B, d, m);
                write_row(out, row);
            }
            return;
        }
        const CellResults cells = run_cells(cfg);
        for (const Row& row : cells.rows) write_row(out, row);
    });
}

int run_sweep(const ExperimentConfig& cfg) {
    if (cfg.experiment != "sweep") {
        std::cerr << "config error: sweep requires experiment = sweep\n";
        return exit_config_error;
    }
    return guarded(cfg, [&cfg](std::ostream& out) {
        write_header(out, cfg);
        const CellResults cells = run_cells(cfg);
        for (const Row& row : cells.rows) write_row(out, row);
        out << "# rate-fit: learner,slope,r_squared\n";
        for (std::size_t li = 0; li < cfg.learners.size(); ++li) {
            const RateFit fit = fit_rate(cells.series[li]);
            out << cfg.learners[li] << ',' << fmt_num(fit.slope) << ',' << fmt_num(fit.r_squared)
                << '\n';
        }
    });
}

int run_verify(const std::string& suite, std::ostream& report, int threads) {
    std::vector<CheckResult> checks;
    auto append = [&checks](std::vector<CheckResult> more) {
        for (auto& c : more) checks.push_back(std::move(c));
    };
    if (suite == "lemma1" || suite == "all") append(verify_lemma1());
    if (suite == "divergence" || suite == "all") append(verify_divergence());
    if (suite == "optima" || suite == "all") append(verify_optima());
    if (suite == "lower-bounds" || suite == "all") append(verify_lower_bounds(threads));
    if (suite == "rates" || suite == "all") append(verify_rates(threads));
    if (checks.empty()) {
        report << "unknown suite: " << suite << '\n';
        return exit_config_error;
    }
    bool ok = true;
    for (const CheckResult& c : checks) {
        report << (c.pass ? "PASS" : "FAIL") << ' ' << c.name << " (" << c.detail << ")\n";
        ok = ok && c.pass;
    }
    return ok ? exit_ok : exit_verify_failed;
}

}  // namespace risklab
