#pragma once

#include <random>
#include <string>
#include <vector>

#include "opm/confidence_matrix.hpp"
#include "opm/opinion.hpp"

namespace opm {

/// Scalar market constants: risk-free rate r, CARA coefficient a,
/// dividend standard deviation sigma, outside supply per agent z^s and
/// mean dividend y_bar.
struct MarketParams {
    double r = 0.05;
    double a = 1.0;
    double sigma = 0.0;
    double z_s = 0.0;
    double y_bar = 0.15;

    /// a * sigma^2 * z^s, the risk premium term of the pricing equation.
    double risk_premium() const { return a * sigma * sigma * z_s; }
    void validate() const;  // r > -1, a > 0, sigma >= 0, z_s >= 0
};

enum class RuleKind { bc, pa, fb };

std::string to_string(RuleKind kind);
RuleKind rule_kind_from_string(const std::string& s);

/// Which target-set rule drives the confidence update. For the
/// fundamental-benchmark rule the reference price p* must be positive.
/// literal_eq evaluates the price-referenced conditions on the agent's own
/// opinion x_i instead of the candidate's x_j.
struct UpdateRule {
    RuleKind kind = RuleKind::bc;
    double fundamental = 0.0;
    bool literal_eq = false;
};

struct DividendDraw {
    double y = 0.0;
};

enum class DividendFamily { normal, lognormal };

/// Mean-variance demand z = (x_next - (1+r) p) / (a sigma^2).
/// sigma == 0 makes the demand undefined and is rejected.
double optimal_demand(double x_next, double price, const MarketParams& params);

/// Market-clearing price: (1+r) p = mean(x_next) - a sigma^2 z^s.
double clearing_price(const OpinionVector& x_next, const MarketParams& params);

/// Perpetuity value of the i.i.d. dividend stream, (y_bar - a sigma^2 z^s)/r.
/// Requires r > 0.
double fundamental_price(const MarketParams& params);

/// w(t+1) = (1+r) w(t) + (p(t+1) + y(t+1) - (1+r) p(t)) z(t).
double wealth_step(double w, double z, double p_next, double y_next, double p, double r);

/// The index set I(i) the update rule assigns to agent i:
///   bc: { j : |x_i - x_j| <= eps_i }
///   pa: { i } union { j : |(p_prev - x_j)/p_prev| <= eps_i }
///   fb: { i } union { j : |(p* - x_j)/p*| <= eps_i }
/// Always contains i, never empty. Sorted ascending.
std::vector<int> target_set(const UpdateRule& rule, int i, const OpinionVector& x_prev,
                            double p_prev, double eps_i);

/// Row i uniform over target_set(i): the update matrix C(t). Row-stochastic
/// with positive diagonal by construction.
ConfidenceMatrix update_matrix(const UpdateRule& rule, const OpinionVector& x_prev,
                               double p_prev, const EpsilonProfile& eps);

/// Rowwise convex combination a_ij = alpha_i c_ij + (1 - alpha_i) a_prev_ij.
ConfidenceMatrix blend(const ConfidenceMatrix& a_prev, const ConfidenceMatrix& c,
                       const std::vector<double>& alpha);

/// One dividend realization with mean y_bar and variance sigma^2.
/// sigma == 0 returns y_bar without consuming randomness.
DividendDraw draw_dividend(const MarketParams& params, std::mt19937_64& rng,
                           DividendFamily family = DividendFamily::normal);

}  // namespace opm
