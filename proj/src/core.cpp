#include "risklab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risklab {

namespace {

bool atom_less(const Atom& a, const Atom& b) {
    for (int i = 0; i < a.x.size(); ++i) {
        if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
    }
    return a.y < b.y;
}

void check_dim(const Vec& w, int dim, const char* what) {
    if (w.size() != dim) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

FiniteDistribution make_distribution(std::vector<Atom> atoms, int dim, double y_bound) {
    if (dim < 1) throw std::invalid_argument("make_distribution: dim must be >= 1");
    if (!(y_bound > 0)) throw std::invalid_argument("make_distribution: y_bound must be > 0");
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (a.x.size() != dim) throw std::invalid_argument("make_distribution: atom dimension mismatch");
        if (!(a.p >= 0.0)) throw std::invalid_argument("make_distribution: negative probability");
        if (a.x.norm() > 1.0 + 1e-12) throw std::invalid_argument("make_distribution: ||x|| > 1");
        if (std::abs(a.y) > y_bound + 1e-12) throw std::invalid_argument("make_distribution: |y| > y_bound");
        if (!a.x.allFinite() || !std::isfinite(a.y)) throw std::invalid_argument("make_distribution: non-finite atom");
        total += a.p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("make_distribution: probabilities do not sum to 1");
    std::sort(atoms.begin(), atoms.end(), atom_less);
    return FiniteDistribution{std::move(atoms), dim, y_bound};
}

Moments moments_of(const FiniteDistribution& dist) {
    Moments mom;
    mom.second_moment = Mat::Zero(dist.dim, dist.dim);
    mom.cross = Vec::Zero(dist.dim);
    mom.y_second = 0.0;
    for (const Atom& a : dist.atoms) {
        mom.second_moment.noalias() += a.p * (a.x * a.x.transpose());
        mom.cross.noalias() += (a.p * a.y) * a.x;
        mom.y_second += a.p * a.y * a.y;
    }
    mom.second_moment = 0.5 * (mom.second_moment + mom.second_moment.transpose()).eval();
    return mom;
}

double risk(const Vec& w, const Moments& mom) {
    check_dim(w, static_cast<int>(mom.cross.size()), "risk");
    return w.dot(mom.second_moment * w) - 2.0 * mom.cross.dot(w) + mom.y_second;
}

double risk_on_atoms(const Vec& w, const FiniteDistribution& dist) {
    check_dim(w, dist.dim, "risk_on_atoms");
    double total = 0.0;
    for (const Atom& a : dist.atoms) {
        double r = w.dot(a.x) - a.y;
        total += a.p * r * r;
    }
    return total;
}

Vec solve_constrained_optimum(const Moments& mom, double norm_bound) {
    if (!(norm_bound > 0)) throw std::invalid_argument("solve_constrained_optimum: norm bound must be > 0");
    const int d = static_cast<int>(mom.cross.size());

    Eigen::SelfAdjointEigenSolver<Mat> eig(mom.second_moment);
    const Vec evals = eig.eigenvalues();
    const Mat q = eig.eigenvectors();
    const Vec beta = q.transpose() * mom.cross;

    const double lam_max = evals.cwiseAbs().maxCoeff();
    const double rank_tol = 1e-12 * std::max(lam_max, 1.0);

    // Min-norm unconstrained solution; null-space components of b (zero for
    // genuine distribution moments) are dropped by the pseudo-inverse.
    Vec coeff = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
        if (evals[i] > rank_tol) coeff[i] = beta[i] / evals[i];
    }
    if (std::isinf(norm_bound) || coeff.norm() <= norm_bound) return q * coeff;

    // Secular equation ||(A + lambda I)^-1 b|| = norm_bound; the norm is
    // strictly decreasing in lambda and at lambda = ||b||/norm_bound it is
    // already <= norm_bound, so the bracket below always contains the root.
    auto norm_at = [&](double lambda) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            double v = beta[i] / (std::max(evals[i], 0.0) + lambda);
            s += v * v;
        }
        return std::sqrt(s);
    };
    double lo = 0.0;
    double hi = mom.cross.norm() / norm_bound;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (norm_at(mid) > norm_bound) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * std::max(hi, 1e-300)) break;
    }
    const double lambda = 0.5 * (lo + hi);
    for (int i = 0; i < d; ++i) coeff[i] = beta[i] / (std::max(evals[i], 0.0) + lambda);
    return q * coeff;
}

double excess_risk(const Vec& w, const Moments& mom, double norm_bound) {
    const Vec wstar = solve_constrained_optimum(mom, norm_bound);
    double e = risk(w, mom) - risk(wstar, mom);
    if (e < -1e-9) throw std::runtime_error("excess_risk: negative beyond roundoff tolerance");
    return std::max(e, 0.0);
}

double predictive_distance(const Vec& w, const Vec& wstar, const Moments& mom) {
    check_dim(w, static_cast<int>(mom.cross.size()), "predictive_distance");
    check_dim(wstar, static_cast<int>(mom.cross.size()), "predictive_distance");
    const Vec delta = w - wstar;
    return delta.dot(mom.second_moment * delta);
}

}  // namespace risklab
