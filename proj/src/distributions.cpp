#include "risklab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risklab {

HardPair thm2_pair(double Y, double B, long m) {
    if (!(Y > 0)) throw std::invalid_argument("thm2_pair: Y must be > 0");
    if (m < 1) throw std::invalid_argument("thm2_pair: m must be >= 1");
    if (B < 2 * Y) throw std::invalid_argument("thm2_pair: requires B >= 2Y");

    HardPair pair;
    pair.Y = Y;
    pair.B = B;
    const double md = static_cast<double>(m);
    if (md <= B * B / (Y * Y)) {
        pair.alpha = 1.0;
    } else {
        pair.alpha = B * B / (Y * Y * md);
    }
    pair.gamma = 1.0 / (3.0 * md);

    auto atom = [](double x, double y, double p) {
        Atom a;
        a.x = Vec::Constant(1, x);
        a.y = y;
        a.p = p;
        return a;
    };
    const double small_x = Y / B;

    std::vector<Atom> atoms0;
    atoms0.push_back(atom(small_x, Y, pair.alpha));
    if (pair.alpha < 1.0) atoms0.push_back(atom(0.0, Y, 1.0 - pair.alpha));
    pair.d0 = make_distribution(std::move(atoms0), 1, Y);

    std::vector<Atom> atoms1;
    atoms1.push_back(atom(1.0, Y, pair.gamma));
    atoms1.push_back(atom(small_x, Y, pair.alpha - pair.gamma));
    if (pair.alpha < 1.0) atoms1.push_back(atom(0.0, Y, 1.0 - pair.alpha));
    pair.d1 = make_distribution(std::move(atoms1), 1, Y);

    pair.wstar0 = B;
    const double ag = pair.alpha - pair.gamma;
    pair.wstar1 = B * (Y * Y * ag + B * Y * pair.gamma) / (Y * Y * ag + B * B * pair.gamma);
    const double diff = pair.wstar1 - pair.wstar0;
    pair.gap_squared = diff * diff;

    // Cross-check the closed forms against the generic solver.
    const Vec num0 = solve_constrained_optimum(moments_of(pair.d0), B);
    const Vec num1 = solve_constrained_optimum(moments_of(pair.d1), B);
    if (std::abs(num0[0] - pair.wstar0) > 1e-10 || std::abs(num1[0] - pair.wstar1) > 1e-10)
        throw std::runtime_error("thm2_pair: closed-form optimum disagrees with solver");
    return pair;
}

std::pair<int, double> thm3_dims(double Y, double B, long m, int d) {
    if (!(Y > 0) || !(B > 0)) throw std::invalid_argument("thm3_dims: Y, B must be > 0");
    if (m < 1 || d < 1) throw std::invalid_argument("thm3_dims: m, d must be >= 1");
    const double threshold = std::sqrt(6.0 * static_cast<double>(m)) * B / Y;
    int d_prime = d;
    if (static_cast<double>(d) > threshold) {
        // The cap at d cannot trigger under the case condition; kept anyway.
        d_prime = std::min(d, static_cast<int>(std::ceil(threshold)));
    }
    d_prime = std::max(d_prime, 1);
    const double b = std::min(0.5, std::sqrt(static_cast<double>(d_prime) / (6.0 * static_cast<double>(m))));
    return {d_prime, b};
}

Thm3Instance thm3_instance(double Y, double B, long m, int d, RngStream& rng) {
    auto [d_prime, b] = thm3_dims(Y, B, m, d);

    Thm3Instance inst;
    inst.index.d_prime = d_prime;
    inst.index.b = b;
    inst.index.sigma.resize(d_prime);
    for (int i = 0; i < d_prime; ++i) inst.index.sigma[i] = rng.next_bool() ? 1 : -1;

    const double inv = 1.0 / static_cast<double>(d_prime);
    std::vector<Atom> atoms;
    atoms.reserve(2 * static_cast<std::size_t>(d_prime));
    for (int i = 0; i < d_prime; ++i) {
        const double s = static_cast<double>(inst.index.sigma[i]);
        Atom up;
        up.x = Vec::Zero(d);
        up.x[i] = 1.0;
        up.y = Y;
        up.p = inv * 0.5 * (1.0 + s * b);
        Atom down = up;
        down.y = -Y;
        down.p = inv * 0.5 * (1.0 - s * b);
        atoms.push_back(std::move(up));
        atoms.push_back(std::move(down));
    }
    inst.dist = make_distribution(std::move(atoms), d, Y);

    const double magnitude = std::min(Y * b, B / std::sqrt(static_cast<double>(d_prime)));
    inst.wstar = Vec::Zero(d);
    for (int i = 0; i < d_prime; ++i) inst.wstar[i] = inst.index.sigma[i] * magnitude;
    return inst;
}

DataSet sample(const FiniteDistribution& dist, long m, RngStream& rng) {
    std::vector<double> cdf;
    cdf.reserve(dist.atoms.size());
    double acc = 0.0;
    for (const Atom& a : dist.atoms) {
        acc += a.p;
        cdf.push_back(acc);
    }
    DataSet data;
    data.dim = dist.dim;
    data.examples.reserve(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
        const double u = rng.next_unit();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
        if (idx >= dist.atoms.size()) idx = dist.atoms.size() - 1;
        data.examples.push_back(Example{dist.atoms[idx].x, dist.atoms[idx].y});
    }
    return data;
}

FiniteDistribution random_test_distribution(RngStream& rng, int d, int atoms, double Y) {
    if (atoms < 1) throw std::invalid_argument("random_test_distribution: atoms must be >= 1");
    std::vector<Atom> table(static_cast<std::size_t>(atoms));
    std::vector<double> weights(static_cast<std::size_t>(atoms));
    double total = 0.0;
    for (int k = 0; k < atoms; ++k) {
        Vec dir(d);
        for (int i = 0; i < d; ++i) dir[i] = rng.next_gaussian();
        double n = dir.norm();
        if (n < 1e-12) {
            dir = Vec::Zero(d);
            dir[0] = 1.0;
            n = 1.0;
        }
        const double radius = rng.next_unit();
        table[k].x = (radius / n) * dir;
        table[k].y = rng.next_uniform(-Y, Y);
        weights[k] = 0.05 + rng.next_unit();
        total += weights[k];
    }
    for (int k = 0; k < atoms; ++k) table[k].p = weights[k] / total;
    return make_distribution(std::move(table), d, Y);
}

}  // namespace risklab
