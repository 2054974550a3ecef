#include "risklab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "risklab/divergence.hpp"
#include "risklab/experiment.hpp"
#include "risklab/harness.hpp"

namespace risklab {

namespace {

std::string fmt(const char* pattern, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

Vec random_in_ball(RngStream& rng, int d, double radius) {
    Vec w(d);
    for (int i = 0; i < d; ++i) w[i] = rng.next_gaussian();
    const double n = w.norm();
    if (n < 1e-12) return Vec::Zero(d);
    return (radius * rng.next_unit() / n) * w;
}

Vec pg_oracle(const Moments& mom, double B, long iters) {
    // Independent projected-gradient oracle: step 1/(2 lambda_max).
    Eigen::SelfAdjointEigenSolver<Mat> eig(mom.second_moment);
    const double lam_max = std::max(eig.eigenvalues().maxCoeff(), 1e-12);
    const double step = 1.0 / (2.0 * lam_max);
    Vec w = Vec::Zero(mom.cross.size());
    for (long k = 0; k < iters; ++k) {
        w -= step * 2.0 * (mom.second_moment * w - mom.cross);
        const double n = w.norm();
        if (n > B) w *= B / n;
    }
    return w;
}

}  // namespace

std::vector<CheckResult> verify_lemma1() {
    std::vector<CheckResult> out;
    RngStream rng(0x11aa22bb1ULL);

    double worst_eq = 0.0;
    double worst_ineq = 0.0;  // min of excess - distance (finite B)
    double worst_atoms = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 5);
        const int atoms = 1 + static_cast<int>(rng.next_u64() % 20);
        const double Y = rng.next_uniform(0.2, 3.0);
        const FiniteDistribution dist = random_test_distribution(rng, d, atoms, Y);
        const Moments mom = moments_of(dist);
        const double inf = std::numeric_limits<double>::infinity();
        const Vec wstar_inf = solve_constrained_optimum(mom, inf);
        const double B = rng.next_uniform(0.05, 2.0);
        const Vec wstar_b = solve_constrained_optimum(mom, B);
        const double best_b = risk(wstar_b, mom);
        for (int j = 0; j < 50; ++j) {
            const Vec w = random_in_ball(rng, d, 3.0);
            const double eq_gap =
                std::abs(excess_risk(w, mom, inf) - predictive_distance(w, wstar_inf, mom));
            worst_eq = std::max(worst_eq, eq_gap);
            // Inequality direction needs the competitor inside the ball.
            Vec w_in = w;
            if (w_in.norm() > B) w_in *= B / w_in.norm();
            const double excess_b = std::max(risk(w_in, mom) - best_b, 0.0);
            worst_ineq =
                std::min(worst_ineq, excess_b - predictive_distance(w_in, wstar_b, mom));
            worst_atoms =
                std::max(worst_atoms, std::abs(risk(w, mom) - risk_on_atoms(w, dist)));
        }
    }
    out.push_back({"lemma1-equality-unconstrained", worst_eq <= 1e-9,
                   fmt("max |excess - distance| %.3g <= %.1g", worst_eq, 1e-9)});
    out.push_back({"lemma1-inequality-constrained", worst_ineq >= -1e-9,
                   fmt("min excess - distance %.3g >= %.1g", worst_ineq, -1e-9)});
    out.push_back({"risk-moments-vs-atoms", worst_atoms <= 1e-10,
                   fmt("max gap %.3g <= %.1g", worst_atoms, 1e-10)});

    // Optimality of the constrained solution against random competitors.
    double worst_norm = 0.0;
    double worst_opt = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 5);
        const FiniteDistribution dist = random_test_distribution(rng, d, 12, 1.5);
        const Moments mom = moments_of(dist);
        const double B = rng.next_uniform(0.05, 1.5);
        const Vec wstar = solve_constrained_optimum(mom, B);
        worst_norm = std::max(worst_norm, wstar.norm() / B - 1.0);
        const double best = risk(wstar, mom);
        for (int j = 0; j < 50; ++j)
            worst_opt = std::max(worst_opt, best - risk(random_in_ball(rng, d, B), mom));
    }
    out.push_back({"optimum-norm-feasible", worst_norm <= 1e-10,
                   fmt("max ||w*||/B - 1 %.3g <= %.1g", worst_norm, 1e-10)});
    out.push_back({"optimum-beats-random", worst_opt <= 1e-8,
                   fmt("max risk(w*) - risk(w) %.3g <= %.1g", worst_opt, 1e-8)});
    return out;
}

std::vector<CheckResult> verify_divergence() {
    std::vector<CheckResult> out;
    RngStream rng(0x33cc44dd2ULL);

    double worst_gap = 0.0;  // min of chi2 - kl
    double worst_neg = 0.0;
    for (int k = 0; k < 500; ++k) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 9);
        std::vector<double> pw(n), qw(n);
        double ps = 0, qs = 0;
        for (int i = 0; i < n; ++i) {
            pw[i] = 0.01 + rng.next_unit();
            qw[i] = 0.01 + rng.next_unit();
            ps += pw[i];
            qs += qw[i];
        }
        for (int i = 0; i < n; ++i) {
            pw[i] /= ps;
            qw[i] /= qs;
        }
        const FiniteLaw p = make_law(pw), q = make_law(qw);
        const double k1 = kl(p, q);
        worst_neg = std::min(worst_neg, k1);
        worst_gap = std::min(worst_gap, chi_squared(p, q) - k1);
    }
    out.push_back({"kl-nonnegative", worst_neg >= 0.0, fmt("min kl %.3g >= %.1g", worst_neg, 0.0)});
    out.push_back({"kl-le-chi-squared", worst_gap >= -1e-12,
                   fmt("min chi2 - kl %.3g >= %.1g", worst_gap, -1e-12)});

    // Closed-form marginal bound equals the generic chi^2 on the pair's
    // x-marginals.
    double worst_marginal = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double Y = rng.next_uniform(0.2, 2.0);
        const double B = rng.next_uniform(2.0 * Y, 6.0 * Y);
        const double alpha = rng.next_uniform(0.05, 1.0);
        const double gamma = rng.next_uniform(1e-4, 0.95) * alpha;
        auto atom = [](double x, double y, double p) {
            return Atom{Vec::Constant(1, x), y, p};
        };
        std::vector<Atom> a0{atom(Y / B, Y, alpha), atom(0.0, Y, 1.0 - alpha)};
        std::vector<Atom> a1{atom(1.0, Y, gamma), atom(Y / B, Y, alpha - gamma),
                             atom(0.0, Y, 1.0 - alpha)};
        const FiniteDistribution d0 = make_distribution(a0, 1, Y);
        const FiniteDistribution d1 = make_distribution(a1, 1, Y);
        const auto [m0, m1] = x_marginal_pair(d0, d1);
        worst_marginal = std::max(
            worst_marginal, std::abs(chi_squared(m0, m1) - thm2_marginal_chi2_bound(alpha, gamma)));
    }
    out.push_back({"thm2-marginal-bound-exact", worst_marginal <= 1e-12,
                   fmt("max gap %.3g <= %.1g", worst_marginal, 1e-12)});

    // Exact per-example KL of the thm3 construction vs the 6b^2/d' bound.
    double worst_thm3 = 0.0;  // min of bound - exact kl
    for (int k = 0; k < 50; ++k) {
        const double b = rng.next_uniform(0.0, 0.5);
        const int d_prime = 1 + static_cast<int>(rng.next_u64() % 10);
        const auto [plus, minus] = thm3_conditional_laws(b, d_prime);
        worst_thm3 =
            std::min(worst_thm3, thm3_per_example_kl_bound(b, d_prime) - kl(plus, minus));
    }
    out.push_back({"thm3-exact-kl-le-bound", worst_thm3 >= -1e-15,
                   fmt("min bound - kl %.3g >= %.1g", worst_thm3, -1e-15)});

    // Zero iff equal.
    bool zero_ok = true;
    for (int k = 0; k < 50 && zero_ok; ++k) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 6);
        std::vector<double> pw(n);
        double s = 0;
        for (auto& v : pw) {
            v = 0.05 + rng.next_unit();
            s += v;
        }
        for (auto& v : pw) v /= s;
        FiniteLaw p = make_law(pw);
        zero_ok = zero_ok && kl(p, p) == 0.0 && chi_squared(p, p) == 0.0;
        std::vector<double> qw = pw;
        const double shift = std::min(0.1, qw[0] * 0.5);
        qw[0] -= shift;
        qw[1] += shift;
        FiniteLaw q = make_law(qw);
        zero_ok = zero_ok && kl(p, q) > 0.0 && chi_squared(p, q) > 0.0;
    }
    out.push_back({"divergence-zero-iff-equal", zero_ok, "50 perturbed pairs"});
    return out;
}

std::vector<CheckResult> verify_optima() {
    std::vector<CheckResult> out;
    RngStream rng(0x55ee66ff3ULL);

    // Constrained optimum vs the projected-gradient oracle, active constraint.
    double worst_dw = 0.0;
    double worst_gap = 0.0;
    int done = 0;
    while (done < 50) {
        const int d = 2 + static_cast<int>(rng.next_u64() % 4);
        const FiniteDistribution dist =
            random_test_distribution(rng, d, 8 + static_cast<int>(rng.next_u64() % 13), 1.5);
        const Moments mom = moments_of(dist);
        const Vec unconstrained =
            solve_constrained_optimum(mom, std::numeric_limits<double>::infinity());
        if (unconstrained.norm() < 1e-2) continue;  // constraint would not bind
        const double B = rng.next_uniform(0.3, 0.8) * unconstrained.norm();
        const Vec wstar = solve_constrained_optimum(mom, B);
        const Vec oracle = pg_oracle(mom, B, 100000);
        worst_dw = std::max(worst_dw, (wstar - oracle).norm());
        worst_gap = std::max(worst_gap, std::abs(risk(wstar, mom) - risk(oracle, mom)));
        ++done;
    }
    out.push_back({"optimum-vs-pg-oracle-dw", worst_dw <= 1e-5,
                   fmt("max ||dw|| %.3g <= %.1g", worst_dw, 1e-5)});
    out.push_back({"optimum-vs-pg-oracle-risk", worst_gap <= 1e-9,
                   fmt("max risk gap %.3g <= %.1g", worst_gap, 1e-9)});

    // thm2 closed forms vs the solver (also enforced at construction).
    bool thm2_ok = true;
    for (int k = 0; k < 50 && thm2_ok; ++k) {
        const double Y = rng.next_uniform(0.2, 2.0);
        const double B = rng.next_uniform(2.0 * Y, 6.0 * Y);
        const long m = 1 + static_cast<long>(rng.next_u64() % 500);
        const HardPair pair = thm2_pair(Y, B, m);
        thm2_ok = thm2_ok && pair.wstar1 <= pair.wstar0 && pair.alpha > pair.gamma;
        const double rhs = std::pow(pair.B, 4) * pair.gamma * pair.gamma *
                           std::pow((Y - B) / (Y * Y * pair.alpha + B * B * pair.gamma), 2);
        thm2_ok = thm2_ok && pair.gap_squared >= rhs - 1e-12;
    }
    out.push_back({"thm2-closed-forms", thm2_ok, "50 configurations"});

    // thm3 closed-form optimum vs the solver; norm identity.
    double worst_thm3 = 0.0;
    double worst_norm = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double Y = rng.next_uniform(0.3, 2.0);
        const double B = rng.next_uniform(0.2, 4.0);
        const long m = 1 + static_cast<long>(rng.next_u64() % 200);
        const int d = 1 + static_cast<int>(rng.next_u64() % 12);
        Thm3Instance inst = thm3_instance(Y, B, m, d, rng);
        const Vec numeric = solve_constrained_optimum(moments_of(inst.dist), B);
        worst_thm3 = std::max(worst_thm3, (numeric - inst.wstar).cwiseAbs().maxCoeff());
        const double expected_norm =
            std::min(Y * inst.index.b * std::sqrt(static_cast<double>(inst.index.d_prime)), B);
        worst_norm = std::max(worst_norm, std::abs(inst.wstar.norm() - expected_norm));
    }
    out.push_back({"thm3-optimum-vs-solver", worst_thm3 <= 1e-10,
                   fmt("max |dw| %.3g <= %.1g", worst_thm3, 1e-10)});
    out.push_back({"thm3-optimum-norm", worst_norm <= 1e-12,
                   fmt("max norm gap %.3g <= %.1g", worst_norm, 1e-12)});

    // Learner invariants: feasible outputs, ERM empirical optimality.
    double worst_learner_norm = 0.0;
    double worst_erm = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 5);
        const FiniteDistribution dist = random_test_distribution(rng, d, 10, 1.0);
        const long m = 5 + static_cast<long>(rng.next_u64() % 60);
        DataSet data = sample(dist, m, rng);
        const double B = rng.next_uniform(0.1, 2.0);
        const Vec w_erm = erm_learner(data, B);
        const Vec candidates[] = {zero_learner(data), vaw_learner(data, 1.0, B),
                                  ogd_learner(data, B, 1.0), w_erm};
        for (const Vec& w : candidates)
            worst_learner_norm = std::max(worst_learner_norm, w.norm() / B - 1.0);
        auto empirical_risk = [&](const Vec& w) {
            double s = 0;
            for (const Example& ex : data.examples) {
                const double r = w.dot(ex.x) - ex.y;
                s += r * r;
            }
            return s / static_cast<double>(data.examples.size());
        };
        const double best = empirical_risk(w_erm);
        for (int j = 0; j < 50; ++j)
            worst_erm = std::max(worst_erm, best - empirical_risk(random_in_ball(rng, d, B)));
    }
    out.push_back({"learner-outputs-feasible", worst_learner_norm <= 1e-10,
                   fmt("max ||w||/B - 1 %.3g <= %.1g", worst_learner_norm, 1e-10)});
    out.push_back({"erm-empirical-optimality", worst_erm <= 1e-8,
                   fmt("max erm - competitor %.3g <= %.1g", worst_erm, 1e-8)});

    // Noiseless realizable recovery.
    {
        const int d = 4;
        Vec w0(d);
        w0 << 0.3, -0.5, 0.1, 0.4;
        DataSet data;
        data.dim = d;
        for (int i = 0; i < 200; ++i) {
            Vec x = random_in_ball(rng, d, 1.0);
            data.examples.push_back(Example{x, w0.dot(x)});
        }
        const Vec w = erm_learner(data, 2.0);
        double s = 0;
        for (const Example& ex : data.examples) {
            const double r = w.dot(ex.x) - ex.y;
            s += r * r;
        }
        s /= static_cast<double>(data.examples.size());
        out.push_back({"erm-realizable-recovery", s <= 1e-12,
                       fmt("empirical risk %.3g <= %.1g", s, 1e-12)});
    }
    return out;
}

std::vector<CheckResult> verify_lower_bounds(int threads) {
    std::vector<CheckResult> out;
    const double Y = 1.0, B = 4.0;
    const long reps = 2000;
    const LearnerKind kinds[] = {LearnerKind::zero, LearnerKind::vaw, LearnerKind::ogd,
                                 LearnerKind::erm};

    for (LearnerKind kind : kinds) {
        LearnerSpec spec{kind, B, Y, 1.0};
        for (long m : {16L, 64L, 256L}) {
            const ExperimentResult res = minimax_thm2(spec, Y, B, m, reps, 0xbeef0001, threads);
            const double threshold = 0.0005 * std::min(Y * Y, B * B / static_cast<double>(m));
            const double observed = res.mean_excess + res.half_width_95;
            std::ostringstream name;
            name << "thm2-lower-bound-" << learner_name(kind) << "-m" << m;
            out.push_back({name.str(), observed >= threshold,
                           fmt("mean + hw %.4g >= %.4g", observed, threshold)});
        }
    }

    const int d = 16;
    for (LearnerKind kind : kinds) {
        LearnerSpec spec{kind, B, Y, 1.0};
        for (long m : {32L, 128L, 512L}) {
            const ExperimentResult res =
                minimax_thm3(spec, Y, B, m, d, reps, 0xbeef0002, threads);
            const auto [d_prime, b] = thm3_dims(Y, B, m, d);
            const double threshold =
                0.05 * std::min({0.25 * Y * Y,
                                 d_prime * Y * Y / (6.0 * static_cast<double>(m)),
                                 B * B / static_cast<double>(d_prime)});
            const double observed = res.mean_excess + res.half_width_95;
            std::ostringstream name;
            name << "thm3-lower-bound-" << learner_name(kind) << "-m" << m;
            out.push_back({name.str(), observed >= threshold,
                           fmt("mean + hw %.4g >= %.4g", observed, threshold)});
        }
    }
    return out;
}

std::vector<CheckResult> verify_rates(int threads) {
    std::vector<CheckResult> out;
    const double Y = 1.0, B = 4.0;

    for (LearnerKind kind : {LearnerKind::erm, LearnerKind::vaw}) {
        LearnerSpec spec{kind, B, Y, 1.0};
        std::vector<std::pair<long, double>> series;
        for (long m : {64L, 256L, 1024L, 4096L}) {
            const ExperimentResult res =
                minimax_thm3(spec, Y, B, m, 8, 1000, 0xfeed0001, threads);
            series.push_back({m, res.mean_excess});
        }
        const RateFit fit = fit_rate(series);
        std::ostringstream name;
        name << "fast-rate-" << learner_name(kind);
        const bool pass = fit.slope >= -1.25 && fit.slope <= -0.75 && fit.r_squared >= 0.9;
        out.push_back({name.str(), pass,
                       fmt("slope %.3f in [-1.25,-0.75], r2 %.3f >= 0.9", fit.slope,
                           fit.r_squared)});
    }

    {
        LearnerSpec spec{LearnerKind::ogd, B, Y, 1.0};
        std::vector<std::pair<long, double>> series;
        for (long m : {64L, 256L, 1024L}) {
            const ExperimentResult res =
                minimax_thm3(spec, Y, B, m, 4096, 500, 0xfeed0002, threads);
            series.push_back({m, res.mean_excess});
        }
        const RateFit fit = fit_rate(series);
        const bool pass = fit.slope >= -0.75 && fit.slope <= -0.30;
        out.push_back({"slow-rate-ogd", pass,
                       fmt("slope %.3f in [-0.75,-0.30] (r2 %.3f)", fit.slope, fit.r_squared)});
    }
    return out;
}

std::vector<CheckResult> verify_zero_guarantee() {
    RngStream rng(0x77aa88bb4ULL);
    double worst = 0.0;  // max risk(0) - Y^2
    for (int k = 0; k < 100; ++k) {
        const int d = 1 + static_cast<int>(rng.next_u64() % 5);
        const double Y = rng.next_uniform(0.2, 3.0);
        const FiniteDistribution dist =
            random_test_distribution(rng, d, 1 + static_cast<int>(rng.next_u64() % 15), Y);
        DataSet empty;
        empty.dim = d;
        worst = std::max(worst, risk_on_atoms(zero_learner(empty), dist) - Y * Y);
    }
    return {{"zero-predictor-guarantee", worst <= 1e-12,
             fmt("max risk - Y^2 %.3g <= %.1g", worst, 1e-12)}};
}

std::vector<CheckResult> verify_hand_values() {
    std::vector<CheckResult> out;
    {
        LearnerSpec spec{LearnerKind::zero, 2.0, 1.0, 1.0};
        const ExperimentResult res = minimax_thm2(spec, 1.0, 2.0, 3, 100, 7, 1);
        const double gap = std::abs(res.mean_excess - 26.0 / 27.0);
        out.push_back({"hand-value-thm2-zero-mean",
                       gap <= 1e-12 && res.half_width_95 <= 1e-12,
                       fmt("|mean - 26/27| %.3g, hw %.3g", gap, res.half_width_95)});
    }
    {
        const HardPair pair = thm2_pair(1.0, 2.0, 10);
        const double g1 = std::abs(pair.wstar1 - 26.0 / 15.0);
        const double g2 = std::abs(pair.gap_squared - 16.0 / 225.0);
        out.push_back({"hand-value-thm2-pair-m10", g1 <= 1e-12 && g2 <= 1e-12,
                       fmt("|dw*1| %.3g, |dgap2| %.3g", g1, g2)});
    }
    {
        const Envelope env = theoretical_envelope(1.0, 2.0, 10, 100);
        const double gap = std::abs(env.lower - 0.14);
        out.push_back(
            {"hand-value-envelope-lower", gap <= 1e-12, fmt("|lower - 0.14| %.3g <= %.1g", gap, 1e-12)});
    }
    return out;
}

std::vector<CheckResult> verify_determinism() {
    ExperimentConfig cfg;
    cfg.experiment = "thm2";
    cfg.Y = 1.0;
    cfg.B = 2.0;
    cfg.m_values = {4, 8};
    cfg.learners = {"zero", "erm"};
    cfg.reps = 50;
    cfg.seed = 42;

    auto run_to_string = [&cfg](const std::string& path, int threads) -> std::string {
        cfg.out_path = path;
        cfg.threads = threads;
        if (run_experiment(cfg) != exit_ok) return "<run failed>";
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = run_to_string("/tmp/risklab_det_a.csv", 1);
    const std::string b = run_to_string("/tmp/risklab_det_b.csv", 1);
    const std::string c = run_to_string("/tmp/risklab_det_c.csv", 8);
    const bool pass = !a.empty() && a != "<run failed>" && a == b && a == c;
    return {{"csv-determinism", pass, pass ? "byte-identical across reruns and 1 vs 8 threads"
                                           : "outputs differ"}};
}

}  // namespace risklab
