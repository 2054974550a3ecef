#pragma once
#include <Eigen/Dense>
#include <vector>

namespace risklab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// One support point of a finite distribution over (x, y).
struct Atom {
    Vec x;
    double y = 0.0;
    double p = 0.0;
};

// Finite-support joint distribution over {x : ||x|| <= 1} x {y : |y| <= y_bound}.
// Atoms are kept in canonical order (lexicographic by x coordinates, then y)
// so equal distributions compare bit-equal.
struct FiniteDistribution {
    std::vector<Atom> atoms;
    int dim = 0;
    double y_bound = 0.0;
};

// Validates invariants (probabilities >= 0 summing to 1 within 1e-12,
// ||x|| <= 1, |y| <= y_bound) and canonicalizes atom order.
// Throws std::invalid_argument on violation.
FiniteDistribution make_distribution(std::vector<Atom> atoms, int dim, double y_bound);

// Second-order summary: risk is the closed-form quadratic
//   R(w) = w' A w - 2 b' w + c
// with A = E[x x'], b = E[y x], c = E[y^2].
struct Moments {
    Mat second_moment;
    Vec cross;
    double y_second = 0.0;
};

Moments moments_of(const FiniteDistribution& dist);

double risk(const Vec& w, const Moments& mom);

// Same risk evaluated by direct atom enumeration; avoids the d x d moment
// matrix, which matters in high dimension.
double risk_on_atoms(const Vec& w, const FiniteDistribution& dist);

// Minimizer of the risk quadratic over the closed ball ||w|| <= norm_bound.
// norm_bound may be +infinity (min-norm unconstrained solution, pseudo-inverse
// when A is singular). Otherwise, if the unconstrained solution exits the
// ball, solves the secular equation ||(A + lambda I)^-1 b|| = norm_bound by
// bisection on lambda in [0, ||b||/norm_bound].
Vec solve_constrained_optimum(const Moments& mom, double norm_bound);

// risk(w) - risk(w*), clipped to 0 when within -1e-9 of zero. A value below
// -1e-9 indicates an internal inconsistency and throws.
double excess_risk(const Vec& w, const Moments& mom, double norm_bound);

// (w - w*)' A (w - w*) = E[(<w,x> - <w*,x>)^2].
double predictive_distance(const Vec& w, const Vec& wstar, const Moments& mom);

}  // namespace risklab
