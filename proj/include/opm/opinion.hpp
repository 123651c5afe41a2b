#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opm/confidence_matrix.hpp"

namespace opm {

/// Opinion of agent i: its expectation of price plus dividend (currency),
/// or a dimensionless value in [0, 1] for the standalone experiments.
using OpinionVector = std::vector<double>;

/// Per-agent confidence radii. Absolute in opinion units for the
/// opinion-distance rule, relative (fractional) for the price-referenced
/// rules.
struct EpsilonProfile {
    std::vector<double> eps;

    static EpsilonProfile uniform(std::size_t n, double value);
    double at(std::size_t i) const { return eps[i]; }
    std::size_t size() const { return eps.size(); }
    void validate() const;  // throws on negative entries
};

struct OpinionCluster {
    double representative = 0.0;  // mean of members
    std::vector<int> members;     // sorted ascending
};

enum class OpinionPattern { consensus, polarization, fragmentation, non_converged };

std::string to_string(OpinionPattern p);

struct StabilityReport {
    bool converged = false;
    /// First step t with max_i |x_i(t) - x_i(t-1)| < tol.
    std::optional<int> t_stable;
    std::vector<OpinionCluster> clusters;  // of the final opinion vector
    OpinionPattern pattern = OpinionPattern::non_converged;
};

struct IterationOptions {
    int max_t = 10000;
    double tol = 1e-9;          // stabilization: max absolute opinion change
    double cluster_tol = 1e-6;  // gap that separates clusters
    bool record_states = true;  // keep every x(t); first/last always kept
};

struct OpinionRun {
    std::vector<OpinionVector> states;  // x(0)..x(T), or {x(0), x(T)} if not recording
    std::vector<int> cluster_counts;    // one per recorded state
    StabilityReport report;
};

/// One pooling step x -> A x. Output entries stay inside [min x, max x].
OpinionVector pool(const ConfidenceMatrix& a, const OpinionVector& x);

/// Bounded-confidence weights from an opinion profile: row i is uniform
/// over I(i) = { j : |x_i - x_j| <= eps_i }, which always contains i.
ConfidenceMatrix bc_matrix(const OpinionVector& x, const EpsilonProfile& eps);

/// Fixed-matrix (time-invariant) pooling until stabilization or max_t.
OpinionRun iterate_homogeneous(const ConfidenceMatrix& a, const OpinionVector& x0,
                               const IterationOptions& opt = {});

/// Bounded-confidence process: the matrix is rebuilt from the current
/// opinions at every step.
OpinionRun iterate_bounded_confidence(const OpinionVector& x0, const EpsilonProfile& eps,
                                      const IterationOptions& opt = {});

/// Sufficient condition for consensus: every pair of agents places
/// positive weight on some common agent.
bool degroot_consensus_condition(const ConfidenceMatrix& a, double threshold = kEdgeThreshold);

/// Necessary-and-sufficient condition: some power A^t, 1 <= t <= t_max,
/// has a strictly positive column.
bool berger_positive_column_condition(const ConfidenceMatrix& a, int t_max,
                                      double threshold = kEdgeThreshold);

struct ConvergenceCheck {
    bool limit_exists = false;  // all diagonal Gantmacher blocks primitive
    bool consensus = false;     // additionally g == 1 with no inessential class
};

ConvergenceCheck gantmacher_convergence_check(const ConfidenceMatrix& a,
                                              double threshold = kEdgeThreshold);

/// Sorts opinions and splits where an adjacent gap exceeds cluster_tol.
std::vector<OpinionCluster> cluster_opinions(const OpinionVector& x, double cluster_tol = 1e-6);

/// consensus / polarization / fragmentation by cluster count (1 / 2 / 3+).
OpinionPattern pattern_from_clusters(std::size_t cluster_count);

}  // namespace opm
