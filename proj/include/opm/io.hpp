#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "opm/classification.hpp"
#include "opm/sim.hpp"

namespace opm::io {

/// Shortest-round-trip decimal form of a double; re-parsing yields the
/// identical bit pattern, so emitted CSV is stable under re-emission.
std::string format_double(double v);

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, int line_)
        : std::runtime_error(message + " (line " + std::to_string(line_) + ")"), line(line_) {}
    int line;
};

/// Edge-list lines "i j [w]", 0-based, whitespace separated. '#' starts a
/// comment. n is 1 + the largest index seen. Empty input is rejected.
DirectedGraph parse_edge_list(std::istream& in);

/// Square comma-separated matrix, one row per line.
ConfidenceMatrix parse_matrix_csv(std::istream& in);

/// Market trajectory CSV:
/// t,price,mean_opinion,min_opinion,max_opinion,dividend,g,essential_agents,clusters
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Full opinion dump: t,x_0,...,x_{n-1} (row per step, t=0 first).
void write_opinions_csv(std::ostream& out, const std::vector<OpinionVector>& states);

/// Opinion summary: t,min,max,mean,n_clusters.
void write_opinion_summary_csv(std::ostream& out, const std::vector<OpinionVector>& states,
                               const std::vector<int>& cluster_counts);

/// Mean price path: t,price.
void write_mean_path_csv(std::ostream& out, const std::vector<double>& mean_path);

/// Histogram sweep rows: epsilon,bin,bin_center,avg_rel_freq.
void write_histogram_csv(std::ostream& out,
                         const std::vector<std::pair<double, std::vector<double>>>& sweep);

nlohmann::json classification_report(const AgentClassification& classification);

nlohmann::json ensemble_report(const MonteCarloResult& result);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace opm::io
