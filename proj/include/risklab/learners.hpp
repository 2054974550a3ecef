#pragma once
#include <string>

#include "risklab/core.hpp"
#include "risklab/distributions.hpp"

namespace risklab {

enum class LearnerKind { zero, vaw, ogd, erm };

LearnerKind learner_kind_from_name(const std::string& name);
std::string learner_name(LearnerKind kind);

struct LearnerSpec {
    LearnerKind kind = LearnerKind::zero;
    double B = 1.0;
    double Y = 1.0;
    double vaw_a = 1.0;  // ridge regularizer, vaw only
};

// All learners are deterministic functions of the dataset and return a
// predictor with ||w|| <= B.

Vec zero_learner(const DataSet& data);

// Follow-the-regularized-leader ridge weights
//   w_t = (a I + sum_{s<t} x_s x_s')^-1 sum_{s<t} y_s x_s,   w_1 = 0,
// averaged over t = 1..m and projected onto the B-ball. The inverse is
// maintained by rank-one (Sherman-Morrison) updates, O(m d^2) total.
Vec vaw_learner(const DataSet& data, double a, double B);

// Projected online gradient descent on the squared loss with step
// eta_t = B / (G sqrt(t)), G = 2(B + Y); returns the iterate average.
Vec ogd_learner(const DataSet& data, double B, double Y);

// Empirical risk minimizer over the B-ball: builds empirical moments and
// delegates to solve_constrained_optimum.
Vec erm_learner(const DataSet& data, double B);

Vec run_learner(const LearnerSpec& spec, const DataSet& data);

}  // namespace risklab
