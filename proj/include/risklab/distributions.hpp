#pragma once
#include <cstdint>
#include <vector>

#include "risklab/core.hpp"
#include "risklab/rng.hpp"

namespace risklab {

struct Example {
    Vec x;
    double y = 0.0;
};

struct DataSet {
    std::vector<Example> examples;
    int dim = 0;
    std::size_t size() const { return examples.size(); }
};

// The one-dimensional indistinguishable pair behind the "thm2" experiment:
// two distributions with y = Y always that differ only in a rare large-x
// event, together with their closed-form optima.
struct HardPair {
    FiniteDistribution d0;
    FiniteDistribution d1;
    double Y = 0.0;
    double B = 0.0;
    double alpha = 0.0;   // P(x = Y/B) mass scale, in (0, 1]
    double gamma = 0.0;   // P(x = 1) under d1, in (0, alpha)
    double wstar0 = 0.0;  // optimum under d0 (= B)
    double wstar1 = 0.0;  // optimum under d1, closed form
    double gap_squared = 0.0;
};

// Builds the pair with the parameter schedule
//   m <= B^2/Y^2 : alpha = 1,           gamma = 1/(3m)
//   m >  B^2/Y^2 : alpha = B^2/(Y^2 m), gamma = 1/(3m)
// Requires B >= 2Y (keeps |x| <= 1). Closed-form optima are cross-checked
// against solve_constrained_optimum at construction.
HardPair thm2_pair(double Y, double B, long m);

// Sign pattern indexing one member of the "thm3" family.
struct HardFamilyIndex {
    std::vector<int> sigma;  // entries +-1, one per active coordinate
    int d_prime = 0;
    double b = 0.0;  // min{1/2, sqrt(d'/6m)}
};

struct Thm3Instance {
    FiniteDistribution dist;
    HardFamilyIndex index;
    Vec wstar;  // closed form: sigma_i * min{Y b, B/sqrt(d')} on active coords
};

// Active-dimension / bias schedule for given (Y, B, m, d):
//   d > sqrt(6m) B/Y : d' = ceil(sqrt(6m) B/Y) (capped at d)
//   otherwise        : d' = d
// Returns (d_prime, b).
std::pair<int, double> thm3_dims(double Y, double B, long m, int d);

// x uniform over the first d' basis vectors; given x = e_i,
// y = +Y with probability (1 + sigma_i b)/2, else -Y.
// sigma is drawn uniformly from {+-1}^d' on the given stream.
Thm3Instance thm3_instance(double Y, double B, long m, int d, RngStream& rng);

// m i.i.d. draws via inverse CDF on the atom table.
DataSet sample(const FiniteDistribution& dist, long m, RngStream& rng);

// Property-test fodder: x uniform direction with uniform radius in the unit
// ball, y uniform in [-Y, Y], normalized positive probabilities.
FiniteDistribution random_test_distribution(RngStream& rng, int d, int atoms, double Y);

}  // namespace risklab
