#include "risklab/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace risklab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const FiniteLaw& p, const FiniteLaw& q) {
    if (p.p.size() != q.p.size())
        throw std::invalid_argument("divergence: laws must share an outcome set");
}
}  // namespace

FiniteLaw make_law(std::vector<double> p) {
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw std::invalid_argument("make_law: negative probability");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("make_law: probabilities do not sum to 1");
    return FiniteLaw{std::move(p)};
}

double kl(const FiniteLaw& p, const FiniteLaw& q) {
    check_pair(p, q);
    double total = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i) {
        if (p.p[i] == 0.0) continue;
        if (q.p[i] == 0.0) return kInf;
        total += p.p[i] * std::log(p.p[i] / q.p[i]);
    }
    return std::max(total, 0.0);
}

double chi_squared(const FiniteLaw& p, const FiniteLaw& q) {
    check_pair(p, q);
    double total = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i) {
        if (q.p[i] == 0.0) {
            if (p.p[i] > 0.0) return kInf;
            continue;
        }
        const double diff = p.p[i] - q.p[i];
        total += diff * diff / q.p[i];
    }
    return total;
}

double thm2_marginal_chi2_bound(double alpha, double gamma) {
    if (!(gamma > 0.0) || !(gamma < alpha) || !(alpha <= 1.0))
        throw std::invalid_argument("thm2_marginal_chi2_bound: requires 0 < gamma < alpha <= 1");
    return gamma * (1.0 + gamma / (alpha - gamma));
}

double thm3_per_example_kl_bound(double b, int d_prime) {
    if (!(b >= 0.0) || b > 0.5)
        throw std::invalid_argument("thm3_per_example_kl_bound: requires b in [0, 1/2]");
    if (d_prime < 1) throw std::invalid_argument("thm3_per_example_kl_bound: d_prime must be >= 1");
    return 6.0 * b * b / static_cast<double>(d_prime);
}

double pinsker_separation(double total_kl) {
    if (!(total_kl >= 0.0)) throw std::invalid_argument("pinsker_separation: total_kl must be >= 0");
    return 1.0 - std::sqrt(total_kl / 2.0);
}

std::pair<FiniteLaw, FiniteLaw> x_marginal_pair(const FiniteDistribution& a,
                                                const FiniteDistribution& b) {
    if (a.dim != 1 || b.dim != 1)
        throw std::invalid_argument("x_marginal_pair: expects one-dimensional distributions");
    std::map<double, std::pair<double, double>> mass;  // x value -> (mass in a, mass in b)
    for (const Atom& at : a.atoms) mass[at.x[0]].first += at.p;
    for (const Atom& at : b.atoms) mass[at.x[0]].second += at.p;
    FiniteLaw pa, pb;
    for (const auto& [x, pq] : mass) {
        pa.p.push_back(pq.first);
        pb.p.push_back(pq.second);
    }
    return {std::move(pa), std::move(pb)};
}

std::pair<FiniteLaw, FiniteLaw> thm3_conditional_laws(double b, int d_prime) {
    if (d_prime < 1) throw std::invalid_argument("thm3_conditional_laws: d_prime must be >= 1");
    // Outcomes (j, y sign) for j = 0..d'-1: index 2j is y = +Y, 2j+1 is y = -Y.
    // Coordinate 0 carries the conditioned sign; the rest are marginalized to
    // a fair y and are identical under both laws.
    const double inv = 1.0 / static_cast<double>(d_prime);
    FiniteLaw plus, minus;
    plus.p.assign(2 * static_cast<std::size_t>(d_prime), inv * 0.5);
    minus.p = plus.p;
    plus.p[0] = inv * 0.5 * (1.0 + b);
    plus.p[1] = inv * 0.5 * (1.0 - b);
    minus.p[0] = inv * 0.5 * (1.0 - b);
    minus.p[1] = inv * 0.5 * (1.0 + b);
    return {std::move(plus), std::move(minus)};
}

}  // namespace risklab
