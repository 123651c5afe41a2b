#include "opm/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace opm {

std::string to_string(InitFamily family) {
    switch (family) {
        case InitFamily::uniform01: return "uniform01";
        case InitFamily::lognormal: return "lognormal";
        case InitFamily::beta: return "beta";
        case InitFamily::explicit_values: return "explicit";
    }
    return "?";
}

InitFamily init_family_from_string(const std::string& s) {
    if (s == "uniform01") return InitFamily::uniform01;
    if (s == "lognormal") return InitFamily::lognormal;
    if (s == "beta") return InitFamily::beta;
    if (s == "explicit") return InitFamily::explicit_values;
    throw std::invalid_argument("unknown init family '" + s + "'");
}

std::string to_string(ShiftTargetKind kind) {
    switch (kind) {
        case ShiftTargetKind::essential_classes: return "essential-classes";
        case ShiftTargetKind::inessential_union: return "inessential-union";
        case ShiftTargetKind::explicit_agents: return "agents";
    }
    return "?";
}

void InitialProfileSpec::validate(int n) const {
    switch (family) {
        case InitFamily::uniform01:
            break;
        case InitFamily::lognormal:
            if (!(mean > 0.0)) throw ConfigError("init.mean", "lognormal mean must be > 0");
            if (!(sdlog > 0.0)) throw ConfigError("init.sdlog", "lognormal sdlog must be > 0");
            break;
        case InitFamily::beta:
            if (!(beta_a > 0.0)) throw ConfigError("init.a", "beta shape a must be > 0");
            if (!(beta_b > 0.0)) throw ConfigError("init.b", "beta shape b must be > 0");
            break;
        case InitFamily::explicit_values:
            if (static_cast<int>(values.size()) != n)
                throw ConfigError("init.values", "explicit profile must list exactly n opinions");
            for (double v : values)
                if (!std::isfinite(v))
                    throw ConfigError("init.values", "explicit profile entries must be finite");
            break;
    }
}

void SimConfig::validate() const {
    if (n < 1) throw ConfigError("n", "n must be >= 1");
    if (t_max < 1) throw ConfigError("t_max", "t_max must be >= 1");
    if (alpha.size() != 1 && alpha.size() != static_cast<std::size_t>(n))
        throw ConfigError("alpha", "alpha must be a scalar or one value per agent");
    for (double a : alpha)
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha", "alpha must lie in [0, 1]");
    if (epsilon.size() != 1 && epsilon.size() != static_cast<std::size_t>(n))
        throw ConfigError("epsilon", "epsilon must be a scalar or one value per agent");
    for (double e : epsilon)
        if (!(e >= 0.0)) throw ConfigError("epsilon", "epsilon must be >= 0");
    try {
        params.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError("market", err.what());
    }
    init.validate(n);
    if (rule.kind == RuleKind::fb) {
        // The fundamental comes from the params unless pinned explicitly.
        if (rule.fundamental == 0.0 && !(params.r > 0.0))
            throw ConfigError("market.r", "fb rule needs r > 0 to define the fundamental price");
        if (rule.fundamental != 0.0 && !(rule.fundamental > 0.0))
            throw ConfigError("fundamental", "fundamental price must be > 0");
    }
    if (shift) {
        if (shift->t0 < 1 || shift->t0 >= t_max)
            throw ConfigError("shift.t0", "shift time must satisfy 1 <= t0 < t_max");
        if (!(shift->magnitude > -1.0))
            throw ConfigError("shift.magnitude", "shift magnitude must be > -1");
        if (shift->target == ShiftTargetKind::essential_classes && shift->class_count < 1)
            throw ConfigError("shift.classes", "essential-classes target needs k >= 1");
        if (shift->target == ShiftTargetKind::explicit_agents) {
            for (int i : shift->agents)
                if (i < 0 || i >= n)
                    throw ConfigError("shift.agents", "shift agent index out of range");
        }
    }
    if (!(cluster_tol >= 0.0)) throw ConfigError("cluster_tol", "cluster_tol must be >= 0");
    if (!(edge_threshold >= 0.0)) throw ConfigError("edge_threshold", "edge_threshold must be >= 0");
}

std::vector<double> SimConfig::alpha_per_agent() const {
    if (alpha.size() == 1) return std::vector<double>(n, alpha.front());
    return alpha;
}

EpsilonProfile SimConfig::eps_profile() const {
    if (epsilon.size() == 1) return EpsilonProfile::uniform(n, epsilon.front());
    return {epsilon};
}

std::vector<double> Trajectory::prices() const {
    std::vector<double> p;
    p.reserve(steps.size() + 1);
    p.push_back(p0);
    for (const auto& s : steps) p.push_back(s.price);
    return p;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 on master + golden-ratio stride.
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

OpinionVector sample_initial(const InitialProfileSpec& spec, int n, std::uint64_t seed) {
    spec.validate(n);
    OpinionVector x(n);
    std::mt19937_64 rng(seed);
    switch (spec.family) {
        case InitFamily::uniform01: {
            std::uniform_real_distribution<double> dist(0.0, 1.0);
            for (double& v : x) v = dist(rng);
            break;
        }
        case InitFamily::lognormal: {
            const double mu = std::log(spec.mean) - 0.5 * spec.sdlog * spec.sdlog;
            std::lognormal_distribution<double> dist(mu, spec.sdlog);
            for (double& v : x) v = dist(rng);
            break;
        }
        case InitFamily::beta: {
            std::gamma_distribution<double> ga(spec.beta_a, 1.0);
            std::gamma_distribution<double> gb(spec.beta_b, 1.0);
            for (double& v : x) {
                const double u = ga(rng);
                const double w = gb(rng);
                v = u / (u + w);
            }
            break;
        }
        case InitFamily::explicit_values:
            x = spec.values;
            break;
    }
    return x;
}

std::vector<int> resolve_shift_targets(const AgentClassification& classification,
                                       const ShiftSpec& spec) {
    std::vector<int> targets;
    switch (spec.target) {
        case ShiftTargetKind::essential_classes: {
            // essential_classes is already ordered largest first, ties by
            // smallest member.
            const std::size_t k = std::min<std::size_t>(spec.class_count,
                                                        classification.essential_classes.size());
            for (std::size_t c = 0; c < k; ++c) {
                const auto& cls = classification.essential_classes[c];
                targets.insert(targets.end(), cls.begin(), cls.end());
            }
            break;
        }
        case ShiftTargetKind::inessential_union:
            targets = classification.inessential_union();
            break;
        case ShiftTargetKind::explicit_agents:
            targets = spec.agents;
            break;
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
}

ShiftResult inject_shift(const OpinionVector& x, const AgentClassification& classification,
                         const ShiftSpec& spec) {
    if (!(spec.magnitude > -1.0))
        throw std::invalid_argument("inject_shift: magnitude must be > -1");
    ShiftResult result{x, resolve_shift_targets(classification, spec)};
    for (int i : result.affected) {
        if (i < 0 || static_cast<std::size_t>(i) >= x.size())
            throw std::out_of_range("inject_shift: target out of range");
        result.x[i] *= 1.0 + spec.magnitude;
    }
    return result;
}

Trajectory run(const SimConfig& config) {
    config.validate();

    EngineConfig ec;
    ec.rule = config.rule;
    if (ec.rule.kind == RuleKind::fb && ec.rule.fundamental == 0.0)
        ec.rule.fundamental = fundamental_price(config.params);
    ec.params = config.params;
    ec.alpha = config.alpha_per_agent();
    ec.eps = config.eps_profile();
    ec.noise_mode = config.noise_mode;
    ec.dividend_family = config.dividend_family;
    ec.edge_threshold = config.edge_threshold;
    ec.cluster_tol = config.cluster_tol;
    ec.price_abort = config.price_abort;

    MarketEngine engine(ec, sample_initial(config.init, config.n, config.seed), config.seed);

    Trajectory traj;
    traj.p0 = engine.price();
    traj.x0 = engine.opinions();
    traj.steps.reserve(config.t_max);

    for (int t = 1; t <= config.t_max; ++t) {
        if (config.shift && t == config.shift->t0) {
            const AgentClassification& cls = engine.classification();
            traj.shift_t0 = t;
            traj.shift_affected = resolve_shift_targets(cls, *config.shift);
            for (const auto& c : cls.essential_classes)
                traj.essential_at_shift.insert(traj.essential_at_shift.end(), c.begin(), c.end());
            std::sort(traj.essential_at_shift.begin(), traj.essential_at_shift.end());
            traj.inessential_at_shift = cls.inessential_union();
            engine.shift_opinions(traj.shift_affected, config.shift->magnitude);
        }
        traj.steps.push_back(engine.step());
        if (config.record_opinions) traj.opinions.push_back(engine.opinions());
    }
    return traj;
}

ReturnStats return_stats(const std::vector<double>& prices) {
    if (prices.size() < 3)
        throw std::invalid_argument("return_stats: need at least 3 prices");
    std::vector<double> returns;
    returns.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        if (prices[t - 1] == 0.0)
            throw std::domain_error("return_stats: zero price in denominator");
        returns.push_back(prices[t] / prices[t - 1] - 1.0);
    }

    const double n = static_cast<double>(returns.size());
    const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double r : returns) {
        const double d = r - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0) throw std::domain_error("return_stats: degenerate series (zero variance)");

    ReturnStats stats;
    stats.n_returns = returns.size();
    stats.skewness = m3 / std::pow(m2, 1.5);
    stats.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return stats;
}

MonteCarloResult monte_carlo(const SimConfig& config, int runs, std::uint64_t master_seed,
                             int threads) {
    if (runs < 1) throw std::invalid_argument("monte_carlo: runs must be >= 1");
    config.validate();

    // All runs start from the same profile, sampled once.
    SimConfig base = config;
    base.init.family = InitFamily::explicit_values;
    base.init.values = sample_initial(config.init, config.n, derive_seed(master_seed, 0));
    base.record_opinions = false;

    MonteCarloResult result;
    result.run_seeds.resize(runs);
    for (int k = 0; k < runs; ++k) result.run_seeds[k] = derive_seed(master_seed, k + 1);

    std::vector<std::vector<double>> paths(runs);
    std::vector<ReturnStats> stats(runs);
    std::vector<std::string> errors(runs);

    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int k = next.fetch_add(1);
            if (k >= runs) return;
            try {
                SimConfig rc = base;
                rc.seed = result.run_seeds[k];
                const Trajectory traj = run(rc);
                paths[k] = traj.prices();
                try {
                    stats[k] = return_stats(paths[k]);
                } catch (const std::domain_error&) {
                    stats[k].degenerate = true;
                    stats[k].n_returns = paths[k].size() - 1;
                }
            } catch (const std::exception& err) {
                errors[k] = err.what();
            }
        }
    };

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, runs));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (int k = 0; k < runs; ++k)
        if (!errors[k].empty())
            throw std::runtime_error("monte_carlo: run " + std::to_string(k) + " failed: " +
                                     errors[k]);

    // Reduce in run order so the result does not depend on scheduling.
    result.mean_path.assign(paths[0].size(), 0.0);
    for (int k = 0; k < runs; ++k)
        for (std::size_t t = 0; t < result.mean_path.size(); ++t)
            result.mean_path[t] += paths[k][t];
    for (double& v : result.mean_path) v /= static_cast<double>(runs);

    result.per_run = std::move(stats);
    try {
        result.mean_path_stats = return_stats(result.mean_path);
    } catch (const std::domain_error&) {
        result.mean_path_stats.degenerate = true;
        result.mean_path_stats.n_returns = result.mean_path.size() - 1;
    }
    return result;
}

std::vector<double> opinion_histogram(const std::vector<OpinionVector>& final_opinions,
                                      int bins) {
    if (bins < 1) throw std::invalid_argument("opinion_histogram: bins must be >= 1");
    std::vector<double> avg(bins, 0.0);
    if (final_opinions.empty()) return avg;
    for (const auto& x : final_opinions) {
        if (x.empty()) continue;
        std::vector<double> freq(bins, 0.0);
        for (double v : x) {
            int b = static_cast<int>(std::floor(v * bins));
            b = std::clamp(b, 0, bins - 1);
            freq[b] += 1.0;
        }
        for (int b = 0; b < bins; ++b) avg[b] += freq[b] / static_cast<double>(x.size());
    }
    for (double& v : avg) v /= static_cast<double>(final_opinions.size());
    return avg;
}

}  // namespace opm
