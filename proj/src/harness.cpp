#include "risklab/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace risklab {

namespace {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 4;
}

// Runs fn(r) for r = 0..reps-1 on a small pool; results land in a slot
// vector indexed by replication, so the reduction below is independent of
// scheduling.
std::vector<double> run_replications(long reps, int threads,
                                     const std::function<double(long)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(reps), 0.0);
    const int n_threads = std::min<long>(resolve_threads(threads), reps);
    if (n_threads <= 1) {
        for (long r = 0; r < reps; ++r) out[static_cast<std::size_t>(r)] = fn(r);
        return out;
    }
    std::atomic<long> counter{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const long r = counter.fetch_add(1);
            if (r >= reps) return;
            try {
                out[static_cast<std::size_t>(r)] = fn(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

ExperimentResult reduce(const std::vector<double>& values, std::uint64_t seed,
                        const std::string& config) {
    ExperimentResult res;
    res.reps = static_cast<long>(values.size());
    res.seed = seed;
    res.config_digest = digest(config);
    double sum = 0.0;
    for (double v : values) sum += v;
    res.mean_excess = sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - res.mean_excess;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        res.half_width_95 = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    }
    return res;
}

std::string describe(const char* kind, double Y, double B, long m, int d, long reps) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s Y=%.17g B=%.17g m=%ld d=%d reps=%ld", kind, Y, B, m,
                  d, reps);
    return buf;
}

}  // namespace

ExperimentResult mc_excess_risk(const Learner& learner, double B,
                                const FiniteDistribution& dist, long m, long reps,
                                std::uint64_t seed, int threads) {
    if (reps < 2) throw std::invalid_argument("mc_excess_risk: reps must be >= 2");
    const Moments mom = moments_of(dist);
    const Vec wstar = solve_constrained_optimum(mom, B);
    const double best = risk(wstar, mom);
    auto body = [&](long r) {
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(r));
        const DataSet data = sample(dist, m, rng);
        const Vec w = learner(data);
        const double e = risk(w, mom) - best;
        if (e < -1e-9) throw std::runtime_error("mc_excess_risk: negative excess beyond tolerance");
        return std::max(e, 0.0);
    };
    return reduce(run_replications(reps, threads, body), seed,
                  describe("mc", 0.0, B, m, dist.dim, reps));
}

ExperimentResult minimax_thm2(const Learner& learner, double Y, double B, long m,
                              long reps, std::uint64_t seed, int threads) {
    if (reps < 2) throw std::invalid_argument("minimax_thm2: reps must be >= 2");
    const HardPair pair = thm2_pair(Y, B, m);
    const Moments mom0 = moments_of(pair.d0);
    const Moments mom1 = moments_of(pair.d1);
    const double best0 = risk(Vec::Constant(1, pair.wstar0), mom0);
    const double best1 = risk(Vec::Constant(1, pair.wstar1), mom1);
    auto body = [&](long r) {
        RngStream rng0 = RngStream::substream(seed, 2 * static_cast<std::uint64_t>(r));
        RngStream rng1 = RngStream::substream(seed, 2 * static_cast<std::uint64_t>(r) + 1);
        const Vec w0 = learner(sample(pair.d0, m, rng0));
        const Vec w1 = learner(sample(pair.d1, m, rng1));
        const double e0 = risk(w0, mom0) - best0;
        const double e1 = risk(w1, mom1) - best1;
        if (e0 < -1e-9 || e1 < -1e-9)
            throw std::runtime_error("minimax_thm2: negative excess beyond tolerance");
        return 0.5 * (std::max(e0, 0.0) + std::max(e1, 0.0));
    };
    return reduce(run_replications(reps, threads, body), seed,
                  describe("thm2", Y, B, m, 1, reps));
}

ExperimentResult minimax_thm3(const Learner& learner, double Y, double B, long m,
                              int d, long reps, std::uint64_t seed, int threads) {
    if (reps < 2) throw std::invalid_argument("minimax_thm3: reps must be >= 2");
    auto body = [&](long r) {
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(r));
        const Thm3Instance inst = thm3_instance(Y, B, m, d, rng);
        const DataSet data = sample(inst.dist, m, rng);
        const Vec w = learner(data);
        // Atom enumeration keeps scoring exact without the d x d moment matrix.
        const double e = risk_on_atoms(w, inst.dist) - risk_on_atoms(inst.wstar, inst.dist);
        if (e < -1e-9) throw std::runtime_error("minimax_thm3: negative excess beyond tolerance");
        return std::max(e, 0.0);
    };
    return reduce(run_replications(reps, threads, body), seed,
                  describe("thm3", Y, B, m, d, reps));
}

Envelope theoretical_envelope(double Y, double B, int d, long m) {
    if (!(Y > 0) || !(B > 0) || d < 1 || m < 1)
        throw std::invalid_argument("theoretical_envelope: all inputs must be positive");
    const double md = static_cast<double>(m);
    const double dd = static_cast<double>(d);
    Envelope env;
    env.lower = std::min({Y * Y, (B * B + dd * Y * Y) / md, B * Y / std::sqrt(md)});
    env.upper =
        std::min({Y * Y, (B * B + dd * Y * Y * std::log(1.0 + md / dd)) / md, B * Y / std::sqrt(md)});
    return env;
}

RateFit fit_rate(const std::vector<std::pair<long, double>>& series) {
    long distinct = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].second <= 0.0) throw std::invalid_argument("fit_rate: excess must be > 0");
        bool seen = false;
        for (std::size_t j = 0; j < i; ++j) seen = seen || series[j].first == series[i].first;
        if (!seen) ++distinct;
    }
    if (distinct < 2) throw std::invalid_argument("fit_rate: need >= 2 distinct m values");

    const double n = static_cast<double>(series.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [m, excess] : series) {
        const double x = std::log(static_cast<double>(m));
        const double y = std::log(excess);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    RateFit fit;
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    fit.slope = vxy / vxx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r_squared = vyy > 0.0 ? std::min(1.0, (vxy * vxy) / (vxx * vyy)) : 1.0;
    return fit;
}

ExperimentResult mc_excess_risk(const LearnerSpec& spec, const FiniteDistribution& dist,
                                long m, long reps, std::uint64_t seed, int threads) {
    return mc_excess_risk([&spec](const DataSet& s) { return run_learner(spec, s); }, spec.B,
                          dist, m, reps, seed, threads);
}

ExperimentResult minimax_thm2(const LearnerSpec& spec, double Y, double B, long m, long reps,
                              std::uint64_t seed, int threads) {
    return minimax_thm2([&spec](const DataSet& s) { return run_learner(spec, s); }, Y, B, m,
                        reps, seed, threads);
}

ExperimentResult minimax_thm3(const LearnerSpec& spec, double Y, double B, long m, int d,
                              long reps, std::uint64_t seed, int threads) {
    return minimax_thm3([&spec](const DataSet& s) { return run_learner(spec, s); }, Y, B, m, d,
                        reps, seed, threads);
}

std::string digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace risklab
