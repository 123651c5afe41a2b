#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace opm {

/// Directed graph over vertices 0..n-1. Adjacency lists are kept sorted
/// and duplicate-free.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n) : adj_(n) {}

    static DirectedGraph from_edges(std::size_t n,
                                    const std::vector<std::pair<int, int>>& edges);

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const;

    void add_edge(int from, int to);
    bool has_edge(int from, int to) const;
    const std::vector<int>& successors(int v) const { return adj_[v]; }

private:
    void check_vertex(int v) const;
    std::vector<std::vector<int>> adj_;
};

/// Partition of the vertex set into strongly connected components.
/// Classes are listed in Tarjan completion order: every class appears
/// before any class that can reach it (successors first).
struct SccPartition {
    std::vector<std::vector<int>> classes;  // members sorted ascending
    std::vector<int> class_of;              // vertex -> index into classes

    std::size_t count() const { return classes.size(); }
};

/// Condensation of a digraph: one node per SCC, edge (c1, c2) iff some
/// original edge crosses from class c1 into class c2. Always acyclic.
struct CondensationDag {
    std::size_t node_count = 0;
    std::vector<std::vector<int>> edges;  // adjacency, sorted, no duplicates

    std::vector<int> out_degree() const;
};

/// Strongly connected components via iterative Tarjan (no recursion,
/// single pass, O(|V| + |E|)).
SccPartition scc(const DirectedGraph& g);

/// Builds the condensation DAG. The partition must be the SCC partition
/// of the graph; anything else is rejected.
CondensationDag condensation(const DirectedGraph& g, const SccPartition& partition);

/// Topological order of a DAG (nodes with no incoming edges first), or
/// nullopt if the edge set contains a cycle.
std::optional<std::vector<int>> topological_order(const CondensationDag& dag);

}  // namespace opm
