#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "risklab/experiment.hpp"

using namespace risklab;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/risklab_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("round trip of every key") {
        const std::string path = write_temp("ok.cfg",
                                            "# comment\n"
                                            "experiment = thm3\n"
                                            "Y = 1\n"
                                            "B = 4\n"
                                            "d = 8\n"
                                            "m_values = 16, 64, 256\n"
                                            "learners = zero, erm\n"
                                            "reps = 10\n"
                                            "seed = 123\n"
                                            "vaw_a = 2.5\n"
                                            "threads = 1\n"
                                            "out_path = /tmp/risklab_test_out.csv\n");
        ExperimentConfig cfg = load_config(path);
        CHECK(cfg.experiment == "thm3");
        CHECK(cfg.d == 8);
        CHECK(cfg.m_values == std::vector<long>{16, 64, 256});
        CHECK(cfg.learners == std::vector<std::string>{"zero", "erm"});
        CHECK(cfg.seed == 123);
        CHECK(cfg.vaw_a == 2.5);
        validate_config(cfg);
    }
    SUBCASE("unknown key reports the line number") {
        const std::string path = write_temp("bad.cfg", "experiment = thm2\nbogus = 1\n");
        try {
            load_config(path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("malformed value reports the line number") {
        const std::string path = write_temp("bad2.cfg", "reps = soon\n");
        CHECK_THROWS_AS(load_config(path), ConfigError);
    }
    SUBCASE("missing file is an io error") {
        CHECK_THROWS_AS(load_config("/tmp/risklab_no_such_file.cfg"), IoError);
    }
}

TEST_CASE("validation rules") {
    ExperimentConfig cfg;
    cfg.experiment = "thm2";
    cfg.Y = 1.0;
    cfg.B = 1.5;  // violates B >= 2Y
    cfg.m_values = {4};
    cfg.learners = {"zero"};
    cfg.reps = 10;
    cfg.out_path = "/tmp/risklab_test_v.csv";
    try {
        validate_config(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("B >= 2Y") != std::string::npos);
    }
    cfg.B = 4.0;
    validate_config(cfg);
    cfg.m_values = {4, 4};
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    cfg.m_values = {4, 8};
    cfg.out_path.clear();
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("run_experiment exit statuses") {
    ExperimentConfig cfg;
    cfg.experiment = "thm2";
    cfg.Y = 1.0;
    cfg.B = 1.5;
    cfg.m_values = {4};
    cfg.learners = {"zero"};
    cfg.reps = 10;
    cfg.out_path = "/tmp/risklab_test_status.csv";
    CHECK(run_experiment(cfg) == exit_config_error);
    cfg.B = 2.0;
    CHECK(run_experiment(cfg) == exit_ok);
    cfg.out_path = "/tmp/risklab_missing_dir/x.csv";
    CHECK(run_experiment(cfg) == exit_io_error);
}

TEST_CASE("envelope experiment emits the closed-form bounds") {
    ExperimentConfig cfg;
    cfg.experiment = "envelope";
    cfg.Y = 1.0;
    cfg.B = 2.0;
    cfg.d = 10;
    cfg.m_values = {100};
    cfg.out_path = "/tmp/risklab_test_env.csv";
    REQUIRE(run_experiment(cfg) == exit_ok);
    const std::string csv = slurp(cfg.out_path);
    CHECK(csv.find("0.14") != std::string::npos);
    CHECK(csv.find("# risklab") != std::string::npos);
    CHECK(csv.find("experiment,learner,Y,B,d,d_prime,m,reps,seed,") != std::string::npos);
}

TEST_CASE("csv output is deterministic across runs and thread counts") {
    ExperimentConfig cfg;
    cfg.experiment = "thm2";
    cfg.Y = 1.0;
    cfg.B = 2.0;
    cfg.m_values = {4, 8};
    cfg.learners = {"zero", "erm"};
    cfg.reps = 30;
    cfg.seed = 11;
    cfg.out_path = "/tmp/risklab_test_det1.csv";
    cfg.threads = 1;
    REQUIRE(run_experiment(cfg) == exit_ok);
    const std::string first = slurp(cfg.out_path);
    cfg.out_path = "/tmp/risklab_test_det2.csv";
    cfg.threads = 6;
    REQUIRE(run_experiment(cfg) == exit_ok);
    CHECK(first == slurp(cfg.out_path));
    CHECK(!first.empty());
}

TEST_CASE("sweep appends a rate-fit block") {
    ExperimentConfig cfg;
    cfg.experiment = "sweep";
    cfg.Y = 1.0;
    cfg.B = 4.0;
    cfg.d = 4;
    cfg.m_values = {16, 64, 256};
    cfg.learners = {"erm"};
    cfg.reps = 60;
    cfg.seed = 5;
    cfg.out_path = "/tmp/risklab_test_sweep.csv";
    REQUIRE(run_sweep(cfg) == exit_ok);
    const std::string csv = slurp(cfg.out_path);
    CHECK(csv.find("# rate-fit") != std::string::npos);
    CHECK(csv.find("erm,") != std::string::npos);
    cfg.out_path.clear();
    CHECK(run_sweep(cfg) == exit_config_error);
}

TEST_CASE("verify dispatch") {
    std::ostringstream report;
    CHECK(run_verify("no-such-suite", report) == exit_config_error);
    std::ostringstream a, b;
    CHECK(run_verify("divergence", a) == exit_ok);
    CHECK(run_verify("divergence", b) == exit_ok);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("PASS") != std::string::npos);
}
