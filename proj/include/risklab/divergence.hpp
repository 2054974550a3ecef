#pragma once
#include <utility>
#include <vector>

#include "risklab/core.hpp"

namespace risklab {

// Probability law over a shared indexed outcome set; index i is the label.
struct FiniteLaw {
    std::vector<double> p;
};

// Validates (p >= 0, sum 1 within 1e-12).
FiniteLaw make_law(std::vector<double> p);

// KL divergence in nats, with 0 ln(0/q) = 0. Returns +infinity when p puts
// mass where q has none (legitimate output, not an error).
double kl(const FiniteLaw& p, const FiniteLaw& q);

// chi^2 divergence: sum over q-support of (p - q)^2 / q. Same infinity
// convention as kl.
double chi_squared(const FiniteLaw& p, const FiniteLaw& q);

// gamma (1 + gamma/(alpha - gamma)): closed form for the chi^2 divergence
// between the two x-marginals of a thm2 pair. Requires 0 < gamma < alpha <= 1.
double thm2_marginal_chi2_bound(double alpha, double gamma);

// 6 b^2 / d': dominates the exact per-example KL of the thm3 construction.
// Requires 0 <= b <= 1/2 (the derivation needs it).
double thm3_per_example_kl_bound(double b, int d_prime);

// 1 - sqrt(total_kl / 2); non-positive means no separation guaranteed.
double pinsker_separation(double total_kl);

// x-marginal of a 1-d distribution as a law over its distinct x values;
// both distributions are mapped onto the union of their supports so the two
// laws share labels.
std::pair<FiniteLaw, FiniteLaw> x_marginal_pair(const FiniteDistribution& a,
                                                const FiniteDistribution& b);

// Joint (x, y) laws of a thm3 instance conditioned on sigma_i = +1 / -1,
// with the remaining signs marginalized. Outcomes are (basis index, y sign).
std::pair<FiniteLaw, FiniteLaw> thm3_conditional_laws(double b, int d_prime);

}  // namespace risklab
