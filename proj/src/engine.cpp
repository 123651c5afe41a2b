#include "opm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opm {

std::string to_string(NoiseMode mode) {
    return mode == NoiseMode::idiosyncratic ? "idiosyncratic" : "common";
}

NoiseMode noise_mode_from_string(const std::string& s) {
    if (s == "idiosyncratic") return NoiseMode::idiosyncratic;
    if (s == "common") return NoiseMode::common;
    throw std::invalid_argument("unknown noise mode '" + s + "'");
}

MarketEngine::MarketEngine(EngineConfig cfg, OpinionVector x0, std::uint64_t seed)
    : cfg_(std::move(cfg)), x_(std::move(x0)), rng_(seed) {
    const std::size_t n = x_.size();
    if (n == 0) throw std::invalid_argument("MarketEngine: empty opinion vector");
    cfg_.params.validate();
    cfg_.eps.validate();
    if (cfg_.alpha.size() != n || cfg_.eps.size() != n)
        throw std::invalid_argument("MarketEngine: alpha/eps length does not match agent count");
    for (double a : cfg_.alpha)
        if (!(a >= 0.0 && a <= 1.0))
            throw std::invalid_argument("MarketEngine: alpha outside [0, 1]");
    if (cfg_.rule.kind == RuleKind::fb && !(cfg_.rule.fundamental > 0.0))
        throw std::invalid_argument("MarketEngine: fb rule requires fundamental price > 0");

    price_ = clearing_price(x_, cfg_.params);
    a_ = update_matrix(cfg_.rule, x_, price_, cfg_.eps);
    classification_ = classify(a_, cfg_.edge_threshold);
    wealth_.assign(n, 0.0);
    holdings_.assign(n, 0.0);
    if (cfg_.params.sigma > 0.0)
        for (std::size_t i = 0; i < n; ++i)
            holdings_[i] = optimal_demand(x_[i], price_, cfg_.params);
}

void MarketEngine::shift_opinions(const std::vector<int>& targets, double magnitude) {
    if (!(magnitude > -1.0)) throw std::invalid_argument("shift magnitude must be > -1");
    for (int i : targets) {
        if (i < 0 || static_cast<std::size_t>(i) >= x_.size())
            throw std::out_of_range("shift target out of range");
        x_[i] *= 1.0 + magnitude;
    }
}

StepRecord MarketEngine::step() {
    const std::size_t n = x_.size();
    const double prev_price = price_;
    ++t_;

    const double dividend = draw_dividend(cfg_.params, rng_, cfg_.dividend_family).y;

    const ConfidenceMatrix c = update_matrix(cfg_.rule, x_, prev_price, cfg_.eps);
    a_ = blend(a_, c, cfg_.alpha);

    x_ = pool(a_, x_);
    if (cfg_.params.sigma > 0.0) {
        if (cfg_.noise_mode == NoiseMode::common) {
            const double surprise = dividend - cfg_.params.y_bar;
            for (double& xi : x_) xi += surprise;
        } else {
            std::normal_distribution<double> shock(0.0, cfg_.params.sigma);
            for (double& xi : x_) xi += shock(rng_);
        }
    }

    price_ = clearing_price(x_, cfg_.params);
    if (!std::isfinite(price_) || std::abs(price_) > cfg_.price_abort)
        throw NumericalAbort(t_, price_);

    classification_ = classify(a_, cfg_.edge_threshold);
    update_diagnostics(dividend, prev_price);
    return make_record(dividend);
}

void MarketEngine::update_diagnostics(double dividend, double prev_price) {
    // Wealth recursion, one period behind: holdings_ still holds z(t-1).
    const double r = cfg_.params.r;
    for (std::size_t i = 0; i < x_.size(); ++i)
        wealth_[i] = wealth_step(wealth_[i], holdings_[i], price_, dividend, prev_price, r);
    if (cfg_.params.sigma > 0.0)
        for (std::size_t i = 0; i < x_.size(); ++i)
            holdings_[i] = optimal_demand(x_[i], price_, cfg_.params);
}

StepRecord MarketEngine::make_record(double dividend) const {
    StepRecord rec;
    rec.t = t_;
    rec.price = price_;
    rec.dividend = dividend;
    const auto [mn, mx] = std::minmax_element(x_.begin(), x_.end());
    rec.min_opinion = *mn;
    rec.max_opinion = *mx;
    rec.mean_opinion =
        std::accumulate(x_.begin(), x_.end(), 0.0) / static_cast<double>(x_.size());
    rec.g = static_cast<int>(classification_.g());
    rec.essential_agents = static_cast<int>(classification_.essential_agent_count());
    rec.clusters = static_cast<int>(cluster_opinions(x_, cfg_.cluster_tol).size());
    return rec;
}

}  // namespace opm
