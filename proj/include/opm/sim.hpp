#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opm/engine.hpp"

namespace opm {

enum class InitFamily { uniform01, lognormal, beta, explicit_values };

std::string to_string(InitFamily family);
InitFamily init_family_from_string(const std::string& s);

/// Initial opinion profile sampler. The lognormal is parameterized by its
/// distribution mean (underlying normal mu = ln(mean) - sdlog^2/2).
struct InitialProfileSpec {
    InitFamily family = InitFamily::uniform01;
    double mean = 3.0;    // lognormal distribution mean
    double sdlog = 0.25;  // lognormal shape
    double beta_a = 5.0;
    double beta_b = 5.0;
    std::vector<double> values;  // explicit_values

    void validate(int n) const;
};

enum class ShiftTargetKind { essential_classes, inessential_union, explicit_agents };

std::string to_string(ShiftTargetKind kind);

/// Exogenous opinion shock: at step t0 the targeted opinions are scaled by
/// (1 + magnitude) before that step's network update. Essential classes
/// are taken largest first, ties by smallest member index.
struct ShiftSpec {
    int t0 = 50;
    ShiftTargetKind target = ShiftTargetKind::essential_classes;
    int class_count = 1;
    std::vector<int> agents;
    double magnitude = -0.5;
};

struct SimConfig {
    int n = 100;
    int t_max = 200;
    UpdateRule rule;
    MarketParams params;
    std::vector<double> alpha{0.5};  // size 1 = shared value, else per agent
    std::vector<double> epsilon{0.25};
    InitialProfileSpec init;
    NoiseMode noise_mode = NoiseMode::idiosyncratic;
    DividendFamily dividend_family = DividendFamily::normal;
    std::uint64_t seed = 0;
    std::optional<ShiftSpec> shift;
    bool record_opinions = false;
    double edge_threshold = kEdgeThreshold;
    double cluster_tol = 1e-6;
    double price_abort = 1e12;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    std::vector<double> alpha_per_agent() const;
    EpsilonProfile eps_profile() const;
};

struct ConfigError : std::runtime_error {
    ConfigError(std::string key_, const std::string& message)
        : std::runtime_error(message), key(std::move(key_)) {}
    std::string key;
};

struct Trajectory {
    double p0 = 0.0;
    OpinionVector x0;
    std::vector<StepRecord> steps;            // t = 1..t_max
    std::vector<OpinionVector> opinions;      // per step, opt-in
    // Filled when a shift fired: who was hit and the classification
    // snapshot it was resolved against.
    int shift_t0 = -1;
    std::vector<int> shift_affected;
    std::vector<int> essential_at_shift;
    std::vector<int> inessential_at_shift;

    std::vector<double> prices() const;  // p0 followed by step prices
};

Trajectory run(const SimConfig& config);

/// Moment-based sample skewness m3/m2^(3/2) and excess kurtosis
/// m4/m2^2 - 3 of the simple returns p(t)/p(t-1) - 1.
struct ReturnStats {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    std::size_t n_returns = 0;
    /// Set by monte_carlo when a run's return series has zero variance
    /// (sigma = 0 paths); the moments above are then meaningless.
    bool degenerate = false;
};

ReturnStats return_stats(const std::vector<double>& prices);

struct ShiftResult {
    OpinionVector x;
    std::vector<int> affected;  // sorted
};

/// Applies the shift against a classification snapshot. An empty target
/// resolves to no change (the caller sees affected.empty()).
ShiftResult inject_shift(const OpinionVector& x, const AgentClassification& classification,
                         const ShiftSpec& spec);

std::vector<int> resolve_shift_targets(const AgentClassification& classification,
                                       const ShiftSpec& spec);

OpinionVector sample_initial(const InitialProfileSpec& spec, int n, std::uint64_t seed);

struct MonteCarloResult {
    std::vector<double> mean_path;  // pointwise mean of p0..p(t_max)
    std::vector<ReturnStats> per_run;
    std::vector<std::uint64_t> run_seeds;
    ReturnStats mean_path_stats;
};

/// Independent runs from one opinion profile (sampled once from the
/// master seed); per-run seeds derive deterministically from it.
MonteCarloResult monte_carlo(const SimConfig& config, int runs, std::uint64_t master_seed,
                             int threads = 0);

/// Per-bin relative frequencies on [0, 1], averaged across runs.
std::vector<double> opinion_histogram(const std::vector<OpinionVector>& final_opinions,
                                      int bins);

/// Deterministic stream of per-run seeds (splitmix64 over the master).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace opm
