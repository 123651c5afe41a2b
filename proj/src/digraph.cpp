#include "opm/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace opm {

void DirectedGraph::check_vertex(int v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
        throw std::out_of_range("DirectedGraph: vertex " + std::to_string(v) +
                                " outside [0, " + std::to_string(adj_.size()) + ")");
}

void DirectedGraph::add_edge(int from, int to) {
    check_vertex(from);
    check_vertex(to);
    auto& row = adj_[from];
    auto it = std::lower_bound(row.begin(), row.end(), to);
    if (it == row.end() || *it != to) row.insert(it, to);
}

bool DirectedGraph::has_edge(int from, int to) const {
    check_vertex(from);
    check_vertex(to);
    const auto& row = adj_[from];
    return std::binary_search(row.begin(), row.end(), to);
}

std::size_t DirectedGraph::edge_count() const {
    std::size_t m = 0;
    for (const auto& row : adj_) m += row.size();
    return m;
}

DirectedGraph DirectedGraph::from_edges(std::size_t n,
                                        const std::vector<std::pair<int, int>>& edges) {
    DirectedGraph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

namespace {

struct TarjanFrame {
    int vertex;
    std::size_t next_succ;
};

}  // namespace

SccPartition scc(const DirectedGraph& g) {
    const int n = static_cast<int>(g.size());
    SccPartition out;
    out.class_of.assign(n, -1);

    std::vector<int> index(n, -1);
    std::vector<int> lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<TarjanFrame> call;
    int next_index = 0;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            TarjanFrame& frame = call.back();
            const int v = frame.vertex;
            const auto& succ = g.successors(v);
            if (frame.next_succ < succ.size()) {
                const int w = succ[frame.next_succ++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                call.pop_back();
                if (!call.empty()) {
                    const int parent = call.back().vertex;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
                }
                if (lowlink[v] == index[v]) {
                    std::vector<int> component;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        out.class_of[w] = static_cast<int>(out.classes.size());
                        component.push_back(w);
                    } while (w != v);
                    std::sort(component.begin(), component.end());
                    out.classes.push_back(std::move(component));
                }
            }
        }
    }
    return out;
}

CondensationDag condensation(const DirectedGraph& g, const SccPartition& partition) {
    // The partition argument must be exactly scc(g); recomputing is linear
    // and catches both merged and split classes.
    const SccPartition fresh = scc(g);
    bool consistent = partition.classes.size() == fresh.classes.size() &&
                      partition.class_of.size() == fresh.class_of.size();
    if (consistent) {
        // Same partition iff vertices agree pairwise on class membership;
        // compare through canonical representatives.
        std::vector<int> repr_given(partition.classes.size(), -1);
        for (std::size_t c = 0; c < partition.classes.size(); ++c) {
            if (partition.classes[c].empty()) {
                consistent = false;
                break;
            }
            repr_given[c] = partition.classes[c].front();
        }
        for (std::size_t v = 0; consistent && v < fresh.class_of.size(); ++v) {
            const int c = partition.class_of[v];
            if (c < 0 || static_cast<std::size_t>(c) >= partition.classes.size() ||
                fresh.class_of[repr_given[c]] != fresh.class_of[v])
                consistent = false;
        }
    }
    if (!consistent)
        throw std::invalid_argument("condensation: partition is not the SCC partition of the graph");

    CondensationDag dag;
    dag.node_count = partition.count();
    dag.edges.assign(dag.node_count, {});
    for (std::size_t v = 0; v < g.size(); ++v) {
        const int cv = partition.class_of[v];
        for (int w : g.successors(static_cast<int>(v))) {
            const int cw = partition.class_of[w];
            if (cv != cw) dag.edges[cv].push_back(cw);
        }
    }
    for (auto& row : dag.edges) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return dag;
}

std::vector<int> CondensationDag::out_degree() const {
    std::vector<int> deg(node_count, 0);
    for (std::size_t c = 0; c < node_count; ++c) deg[c] = static_cast<int>(edges[c].size());
    return deg;
}

std::optional<std::vector<int>> topological_order(const CondensationDag& dag) {
    std::vector<int> in_deg(dag.node_count, 0);
    for (const auto& row : dag.edges)
        for (int w : row) ++in_deg[w];

    std::vector<int> order;
    order.reserve(dag.node_count);
    std::vector<int> ready;
    for (std::size_t c = 0; c < dag.node_count; ++c)
        if (in_deg[c] == 0) ready.push_back(static_cast<int>(c));

    while (!ready.empty()) {
        const int c = ready.back();
        ready.pop_back();
        order.push_back(c);
        for (int w : dag.edges[c])
            if (--in_deg[w] == 0) ready.push_back(w);
    }
    if (order.size() != dag.node_count) return std::nullopt;
    return order;
}

}  // namespace opm
