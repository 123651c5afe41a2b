#include "opm/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace opm {

void MarketParams::validate() const {
    if (!(r > -1.0)) throw std::invalid_argument("MarketParams: r must be > -1");
    if (!(a > 0.0)) throw std::invalid_argument("MarketParams: a must be > 0");
    if (!(sigma >= 0.0)) throw std::invalid_argument("MarketParams: sigma must be >= 0");
    if (!(z_s >= 0.0)) throw std::invalid_argument("MarketParams: z_s must be >= 0");
    if (!std::isfinite(y_bar)) throw std::invalid_argument("MarketParams: y_bar must be finite");
}

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::bc: return "bc";
        case RuleKind::pa: return "pa";
        case RuleKind::fb: return "fb";
    }
    return "?";
}

RuleKind rule_kind_from_string(const std::string& s) {
    if (s == "bc") return RuleKind::bc;
    if (s == "pa") return RuleKind::pa;
    if (s == "fb") return RuleKind::fb;
    throw std::invalid_argument("unknown model '" + s + "', expected bc, pa or fb");
}

double optimal_demand(double x_next, double price, const MarketParams& params) {
    if (!(params.a > 0.0)) throw std::invalid_argument("optimal_demand: a must be > 0");
    if (params.sigma == 0.0)
        throw std::domain_error("optimal_demand: degenerate variance (sigma = 0)");
    return (x_next - (1.0 + params.r) * price) / (params.a * params.sigma * params.sigma);
}

double clearing_price(const OpinionVector& x_next, const MarketParams& params) {
    if (x_next.empty()) throw std::invalid_argument("clearing_price: no opinions");
    if (params.r == -1.0) throw std::invalid_argument("clearing_price: r = -1");
    const double mean =
        std::accumulate(x_next.begin(), x_next.end(), 0.0) / static_cast<double>(x_next.size());
    return (mean - params.risk_premium()) / (1.0 + params.r);
}

double fundamental_price(const MarketParams& params) {
    if (!(params.r > 0.0))
        throw std::invalid_argument("fundamental_price: perpetuity requires r > 0");
    return (params.y_bar - params.risk_premium()) / params.r;
}

double wealth_step(double w, double z, double p_next, double y_next, double p, double r) {
    return (1.0 + r) * w + (p_next + y_next - (1.0 + r) * p) * z;
}

std::vector<int> target_set(const UpdateRule& rule, int i, const OpinionVector& x_prev,
                            double p_prev, double eps_i) {
    const int n = static_cast<int>(x_prev.size());
    if (i < 0 || i >= n) throw std::out_of_range("target_set: agent index out of range");
    if (eps_i < 0.0) throw std::invalid_argument("target_set: eps must be >= 0");

    std::vector<int> members;
    switch (rule.kind) {
        case RuleKind::bc:
            for (int j = 0; j < n; ++j)
                if (std::abs(x_prev[i] - x_prev[j]) <= eps_i) members.push_back(j);
            break;
        case RuleKind::pa:
        case RuleKind::fb: {
            const double ref = rule.kind == RuleKind::pa ? p_prev : rule.fundamental;
            if (!(ref > 0.0))
                throw std::domain_error("target_set: reference price must be positive for the " +
                                        to_string(rule.kind) + " rule");
            if (rule.literal_eq) {
                // Printed form of the condition: the agent's own deviation
                // decides, so the comparison set is all-or-nothing.
                if (std::abs((ref - x_prev[i]) / ref) <= eps_i) {
                    for (int j = 0; j < n; ++j) members.push_back(j);
                } else {
                    members.push_back(i);
                }
            } else {
                for (int j = 0; j < n; ++j)
                    if (j == i || std::abs((ref - x_prev[j]) / ref) <= eps_i)
                        members.push_back(j);
            }
            break;
        }
    }
    return members;
}

ConfidenceMatrix update_matrix(const UpdateRule& rule, const OpinionVector& x_prev,
                               double p_prev, const EpsilonProfile& eps) {
    const std::size_t n = x_prev.size();
    if (eps.size() != n)
        throw std::invalid_argument("update_matrix: epsilon profile length does not match opinions");
    ConfidenceMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto members = target_set(rule, static_cast<int>(i), x_prev, p_prev, eps.at(i));
        const double w = 1.0 / static_cast<double>(members.size());
        for (int j : members) c(i, j) = w;
    }
    return c;
}

ConfidenceMatrix blend(const ConfidenceMatrix& a_prev, const ConfidenceMatrix& c,
                       const std::vector<double>& alpha) {
    const std::size_t n = a_prev.size();
    if (c.size() != n) throw std::invalid_argument("blend: matrix sizes differ");
    if (alpha.size() != n) throw std::invalid_argument("blend: alpha length does not match");
    ConfidenceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = alpha[i];
        if (ai < 0.0 || ai > 1.0) throw std::invalid_argument("blend: alpha outside [0, 1]");
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = ai * c(i, j) + (1.0 - ai) * a_prev(i, j);
    }
    return out;
}

DividendDraw draw_dividend(const MarketParams& params, std::mt19937_64& rng,
                           DividendFamily family) {
    if (params.sigma == 0.0) return {params.y_bar};
    switch (family) {
        case DividendFamily::normal: {
            std::normal_distribution<double> dist(params.y_bar, params.sigma);
            return {dist(rng)};
        }
        case DividendFamily::lognormal: {
            // Match the first two moments: E = y_bar, Var = sigma^2.
            if (!(params.y_bar > 0.0))
                throw std::domain_error("draw_dividend: lognormal needs y_bar > 0");
            const double ratio = params.sigma / params.y_bar;
            const double s2 = std::log1p(ratio * ratio);
            const double mu = std::log(params.y_bar) - 0.5 * s2;
            std::lognormal_distribution<double> dist(mu, std::sqrt(s2));
            return {dist(rng)};
        }
    }
    throw std::logic_error("draw_dividend: unknown family");
}

}  // namespace opm
