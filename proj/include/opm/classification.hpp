#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "opm/confidence_matrix.hpp"
#include "opm/digraph.hpp"

namespace opm {

/// Refinement of the essential/inessential split: essential classes whose
/// SCC subgraph is complete are closed-minded, other essential classes are
/// moderate-minded, and every inessential vertex is open-minded.
enum class MindLabel { closed_minded, moderate_minded, open_minded };

std::string to_string(MindLabel label);

struct AgentClassification {
    /// Sink classes of the condensation, ordered largest first (ties by
    /// smallest member); members sorted ascending.
    std::vector<std::vector<int>> essential_classes;
    std::vector<std::vector<int>> inessential_classes;
    std::vector<bool> is_essential;        // per vertex
    std::vector<MindLabel> refined_label;  // per vertex

    std::size_t g() const { return essential_classes.size(); }
    std::size_t essential_agent_count() const;
    std::vector<int> inessential_union() const;  // sorted
};

/// Block-triangular reordering: essential (irreducible, uncoupled) blocks
/// first, inessential blocks after, each block preceded by every block it
/// places weight on.
struct GantmacherForm {
    std::vector<int> permutation;  // permutation[new_pos] = original vertex
    std::vector<std::pair<int, int>> block_boundaries;  // half-open [begin, end)
    std::size_t g = 0;             // leading blocks that are essential
};

/// Classifies agents from the digraph of positive confidence entries:
/// SCCs, condensation, sinks = essential, refined labels from subgraph
/// completeness. Self-loops never affect sink-ness.
AgentClassification classify_graph(const DirectedGraph& g);
AgentClassification classify(const ConfidenceMatrix& m, double threshold = kEdgeThreshold);

GantmacherForm gantmacher_form_graph(const DirectedGraph& g);
GantmacherForm gantmacher_form(const ConfidenceMatrix& m, double threshold = kEdgeThreshold);

/// Applies a GantmacherForm permutation: out(i, j) = m(perm[i], perm[j]).
ConfidenceMatrix permute(const ConfidenceMatrix& m, const std::vector<int>& permutation);

}  // namespace opm
