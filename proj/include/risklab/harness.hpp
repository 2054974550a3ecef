#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "risklab/core.hpp"
#include "risklab/distributions.hpp"
#include "risklab/learners.hpp"

namespace risklab {

// Monte Carlo estimate of expected excess risk. Excess is scored exactly
// from the known distribution, never from a held-out sample.
struct ExperimentResult {
    double mean_excess = 0.0;
    double half_width_95 = 0.0;  // 1.96 * sample std / sqrt(reps)
    long reps = 0;
    std::uint64_t seed = 0;
    std::string config_digest;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Learners receive only the dataset; the harness never leaks the branch coin
// or the sign pattern.
using Learner = std::function<Vec(const DataSet&)>;

// Replication r runs on RngStream::substream(seed, r); the reduction is
// ordered by replication index, so results are identical for any thread
// count. threads <= 0 means hardware concurrency.
ExperimentResult mc_excess_risk(const Learner& learner, double B,
                                const FiniteDistribution& dist, long m, long reps,
                                std::uint64_t seed, int threads = 0);

// The randomized-instance experiment over a thm2 pair. Each replication
// evaluates both branches of the fair coin (stratified over the coin: the
// expectation is unchanged, the variance only drops) -- sample from d0,
// learn, score against w*0; likewise for d1; average with weight 1/2.
ExperimentResult minimax_thm2(const Learner& learner, double Y, double B, long m,
                              long reps, std::uint64_t seed, int threads = 0);

// The randomized-instance experiment over the thm3 family. Each replication
// draws a fresh sign pattern, builds the instance, samples, learns, and
// scores exact excess against that instance's own optimum.
ExperimentResult minimax_thm3(const Learner& learner, double Y, double B, long m,
                              int d, long reps, std::uint64_t seed, int threads = 0);

struct Envelope {
    double lower = 0.0;  // min{Y^2, (B^2 + d Y^2)/m, B Y/sqrt(m)}
    double upper = 0.0;  // min{Y^2, (B^2 + d Y^2 ln(1 + m/d))/m, B Y/sqrt(m)}
};

Envelope theoretical_envelope(double Y, double B, int d, long m);

// OLS of ln(excess) on ln(m); slope is the empirical rate exponent.
// Requires >= 2 distinct m values and strictly positive excess.
RateFit fit_rate(const std::vector<std::pair<long, double>>& series);

// Convenience overloads dispatching on LearnerSpec.
ExperimentResult mc_excess_risk(const LearnerSpec& spec, const FiniteDistribution& dist,
                                long m, long reps, std::uint64_t seed, int threads = 0);
ExperimentResult minimax_thm2(const LearnerSpec& spec, double Y, double B, long m,
                              long reps, std::uint64_t seed, int threads = 0);
ExperimentResult minimax_thm3(const LearnerSpec& spec, double Y, double B, long m,
                              int d, long reps, std::uint64_t seed, int threads = 0);

// FNV-1a digest of an arbitrary canonical string, as 16 hex chars.
std::string digest(const std::string& text);

}  // namespace risklab
