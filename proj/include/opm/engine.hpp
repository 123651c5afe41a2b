#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "opm/classification.hpp"
#include "opm/market.hpp"
#include "opm/opinion.hpp"

namespace opm {

/// How the dividend randomness enters the opinions after pooling:
/// idiosyncratic adds an independent N(0, sigma^2) shock per agent,
/// common adds the single realized dividend surprise y(t) - y_bar to all.
enum class NoiseMode { idiosyncratic, common };

std::string to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(const std::string& s);

struct EngineConfig {
    UpdateRule rule;
    MarketParams params;
    std::vector<double> alpha;  // per agent, in [0, 1]
    EpsilonProfile eps;
    NoiseMode noise_mode = NoiseMode::idiosyncratic;
    DividendFamily dividend_family = DividendFamily::normal;
    double edge_threshold = kEdgeThreshold;
    double cluster_tol = 1e-6;
    double price_abort = 1e12;
};

struct StepRecord {
    int t = 0;
    double price = 0.0;
    double dividend = 0.0;
    double min_opinion = 0.0;
    double mean_opinion = 0.0;
    double max_opinion = 0.0;
    int g = 0;
    int essential_agents = 0;
    int clusters = 0;
};

/// Thrown when the price magnitude exceeds the abort bound.
struct NumericalAbort : std::runtime_error {
    NumericalAbort(int step, double price_value)
        : std::runtime_error("price diverged at step " + std::to_string(step) + " (|p| = " +
                             std::to_string(price_value) + ")"),
          t(step),
          price(price_value) {}
    int t;
    double price;
};

/// One coupled opinion/network/price process. A step from state
/// (x, A, p) is: build C from the rule at (x, p), A <- blend(A, C, alpha),
/// x <- A x plus noise, p <- clearing price of the new x. The initial
/// network is the rule applied to x(0) at p(0) (alpha treated as 1).
class MarketEngine {
public:
    MarketEngine(EngineConfig cfg, OpinionVector x0, std::uint64_t seed);

    std::size_t n() const { return x_.size(); }
    int t() const { return t_; }
    double price() const { return price_; }
    const OpinionVector& opinions() const { return x_; }
    const ConfidenceMatrix& confidence() const { return a_; }
    const AgentClassification& classification() const { return classification_; }
    const std::vector<double>& wealth() const { return wealth_; }
    const std::vector<double>& holdings() const { return holdings_; }

    /// Multiplies the targeted opinions by (1 + magnitude). Call before
    /// step() to shift "just before the network update".
    void shift_opinions(const std::vector<int>& targets, double magnitude);

    StepRecord step();

private:
    StepRecord make_record(double dividend) const;
    void update_diagnostics(double dividend, double prev_price);

    EngineConfig cfg_;
    OpinionVector x_;
    ConfidenceMatrix a_;
    double price_ = 0.0;
    AgentClassification classification_;
    std::vector<double> wealth_;
    std::vector<double> holdings_;
    std::mt19937_64 rng_;
    int t_ = 0;
};

}  // namespace opm
