#include "risklab/learners.hpp"

#include <cmath>
#include <stdexcept>

namespace risklab {

LearnerKind learner_kind_from_name(const std::string& name) {
    if (name == "zero") return LearnerKind::zero;
    if (name == "vaw") return LearnerKind::vaw;
    if (name == "ogd") return LearnerKind::ogd;
    if (name == "erm") return LearnerKind::erm;
    throw std::invalid_argument("unknown learner: " + name);
}

std::string learner_name(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::zero: return "zero";
        case LearnerKind::vaw: return "vaw";
        case LearnerKind::ogd: return "ogd";
        case LearnerKind::erm: return "erm";
    }
    return "?";
}

namespace {
Vec project_ball(Vec w, double B) {
    const double n = w.norm();
    if (n > B) w *= B / n;
    return w;
}
}  // namespace

Vec zero_learner(const DataSet& data) { return Vec::Zero(data.dim); }

Vec vaw_learner(const DataSet& data, double a, double B) {
    if (!(a > 0)) throw std::invalid_argument("vaw_learner: a must be > 0");
    if (data.examples.empty()) throw std::invalid_argument("vaw_learner: empty dataset");
    const int d = data.dim;
    Mat inv = Mat::Identity(d, d) / a;  // (a I + sum x x')^-1
    Vec s = Vec::Zero(d);               // sum y x
    Vec sum_w = Vec::Zero(d);
    for (const Example& ex : data.examples) {
        sum_w.noalias() += inv * s;  // pre-update weights; the first is 0
        const Vec ix = inv * ex.x;
        inv.noalias() -= ix * ix.transpose() / (1.0 + ex.x.dot(ix));
        s.noalias() += ex.y * ex.x;
    }
    return project_ball(sum_w / static_cast<double>(data.examples.size()), B);
}

Vec ogd_learner(const DataSet& data, double B, double Y) {
    if (data.examples.empty()) throw std::invalid_argument("ogd_learner: empty dataset");
    const double G = 2.0 * (B + Y);
    Vec w = Vec::Zero(data.dim);
    Vec sum_w = Vec::Zero(data.dim);
    long t = 0;
    for (const Example& ex : data.examples) {
        ++t;
        sum_w += w;
        const double eta = B / (G * std::sqrt(static_cast<double>(t)));
        w -= (eta * 2.0 * (w.dot(ex.x) - ex.y)) * ex.x;
        w = project_ball(std::move(w), B);
    }
    return sum_w / static_cast<double>(t);
}

Vec erm_learner(const DataSet& data, double B) {
    if (data.examples.empty()) throw std::invalid_argument("erm_learner: empty dataset");
    const double inv_m = 1.0 / static_cast<double>(data.examples.size());
    Moments mom;
    mom.second_moment = Mat::Zero(data.dim, data.dim);
    mom.cross = Vec::Zero(data.dim);
    for (const Example& ex : data.examples) {
        mom.second_moment.noalias() += inv_m * (ex.x * ex.x.transpose());
        mom.cross.noalias() += (inv_m * ex.y) * ex.x;
        mom.y_second += inv_m * ex.y * ex.y;
    }
    mom.second_moment = 0.5 * (mom.second_moment + mom.second_moment.transpose()).eval();
    return solve_constrained_optimum(mom, B);
}

Vec run_learner(const LearnerSpec& spec, const DataSet& data) {
    switch (spec.kind) {
        case LearnerKind::zero: return zero_learner(data);
        case LearnerKind::vaw: return vaw_learner(data, spec.vaw_a, spec.B);
        case LearnerKind::ogd: return ogd_learner(data, spec.B, spec.Y);
        case LearnerKind::erm: return erm_learner(data, spec.B);
    }
    throw std::logic_error("run_learner: unreachable");
}

}  // namespace risklab
