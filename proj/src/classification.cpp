#include "opm/classification.hpp"

#include <algorithm>
#include <stdexcept>

namespace opm {

std::string to_string(MindLabel label) {
    switch (label) {
        case MindLabel::closed_minded: return "closed-minded";
        case MindLabel::moderate_minded: return "moderate-minded";
        case MindLabel::open_minded: return "open-minded";
    }
    return "?";
}

std::size_t AgentClassification::essential_agent_count() const {
    std::size_t c = 0;
    for (const auto& cls : essential_classes) c += cls.size();
    return c;
}

std::vector<int> AgentClassification::inessential_union() const {
    std::vector<int> out;
    for (const auto& cls : inessential_classes) out.insert(out.end(), cls.begin(), cls.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Every ordered pair of distinct members linked; self-loops ignored.
bool class_subgraph_complete(const DirectedGraph& g, const std::vector<int>& members) {
    for (int u : members)
        for (int v : members)
            if (u != v && !g.has_edge(u, v)) return false;
    return true;
}

bool class_order_before(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
}

}  // namespace

AgentClassification classify_graph(const DirectedGraph& g) {
    const SccPartition partition = scc(g);
    const CondensationDag dag = condensation(g, partition);
    const std::vector<int> out_deg = dag.out_degree();

    AgentClassification out;
    out.is_essential.assign(g.size(), false);
    out.refined_label.assign(g.size(), MindLabel::open_minded);

    for (std::size_t c = 0; c < partition.count(); ++c) {
        const auto& members = partition.classes[c];
        if (out_deg[c] == 0) {
            const MindLabel label = class_subgraph_complete(g, members)
                                        ? MindLabel::closed_minded
                                        : MindLabel::moderate_minded;
            for (int v : members) {
                out.is_essential[v] = true;
                out.refined_label[v] = label;
            }
            out.essential_classes.push_back(members);
        } else {
            out.inessential_classes.push_back(members);
        }
    }
    std::sort(out.essential_classes.begin(), out.essential_classes.end(), class_order_before);
    std::sort(out.inessential_classes.begin(), out.inessential_classes.end(), class_order_before);
    return out;
}

AgentClassification classify(const ConfidenceMatrix& m, double threshold) {
    return classify_graph(m.induced_graph(threshold));
}

GantmacherForm gantmacher_form_graph(const DirectedGraph& g) {
    const SccPartition partition = scc(g);
    const CondensationDag dag = condensation(g, partition);
    const std::vector<int> out_deg = dag.out_degree();

    // partition.classes is already in Tarjan completion order (successors
    // first), which is exactly the block order that makes the permuted
    // matrix lower block-triangular. Pulling the sinks to the front keeps
    // that property, since sinks have no successors to wait for.
    std::vector<int> block_order;
    block_order.reserve(partition.count());
    std::vector<int> sinks;
    for (std::size_t c = 0; c < partition.count(); ++c)
        if (out_deg[c] == 0) sinks.push_back(static_cast<int>(c));
    std::sort(sinks.begin(), sinks.end(), [&](int a, int b) {
        return class_order_before(partition.classes[a], partition.classes[b]);
    });
    block_order = sinks;
    for (std::size_t c = 0; c < partition.count(); ++c)
        if (out_deg[c] != 0) block_order.push_back(static_cast<int>(c));

    GantmacherForm form;
    form.g = sinks.size();
    form.permutation.reserve(g.size());
    for (int c : block_order) {
        const int begin = static_cast<int>(form.permutation.size());
        for (int v : partition.classes[c]) form.permutation.push_back(v);
        form.block_boundaries.emplace_back(begin, static_cast<int>(form.permutation.size()));
    }
    return form;
}

GantmacherForm gantmacher_form(const ConfidenceMatrix& m, double threshold) {
    return gantmacher_form_graph(m.induced_graph(threshold));
}

ConfidenceMatrix permute(const ConfidenceMatrix& m, const std::vector<int>& permutation) {
    const std::size_t n = m.size();
    if (permutation.size() != n)
        throw std::invalid_argument("permute: permutation length does not match matrix size");
    ConfidenceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m(permutation[i], permutation[j]);
    return out;
}

}  // namespace opm
