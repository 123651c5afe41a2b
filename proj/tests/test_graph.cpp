#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "opm/classification.hpp"
#include "opm/confidence_matrix.hpp"
#include "opm/digraph.hpp"
#include "oracles.hpp"

using namespace opm;

namespace {

std::set<std::set<int>> as_sets(const std::vector<std::vector<int>>& classes) {
    std::set<std::set<int>> out;
    for (const auto& c : classes) out.insert(std::set<int>(c.begin(), c.end()));
    return out;
}

}  // namespace

TEST_CASE("scc on a two-node cycle with a tail") {
    // 0 <-> 1, 1 -> 2
    const auto g = DirectedGraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});
    const auto p = scc(g);
    CHECK(as_sets(p.classes) == as_sets(oracle::scc_classes(g)));
    CHECK(as_sets(p.classes) == std::set<std::set<int>>{{0, 1}, {2}});
    CHECK(p.class_of[0] == p.class_of[1]);
    CHECK(p.class_of[0] != p.class_of[2]);
}

TEST_CASE("scc of a single vertex and of a complete digraph") {
    const auto p1 = scc(DirectedGraph(1));
    CHECK(p1.count() == 1);
    CHECK(p1.classes[0] == std::vector<int>{0});

    DirectedGraph k5(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) k5.add_edge(i, j);
    CHECK(scc(k5).count() == 1);
}

TEST_CASE("scc of the empty graph") {
    CHECK(scc(DirectedGraph(0)).count() == 0);
}

TEST_CASE("scc matches the brute-force mutual-reachability oracle") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_real_distribution<double> prob(0.02, 0.5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = oracle::random_digraph(size(rng), prob(rng), rng);
        CAPTURE(trial);
        REQUIRE(as_sets(scc(g).classes) == as_sets(oracle::scc_classes(g)));
    }
}

TEST_CASE("scc class order puts successors first") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_digraph(10, 0.15, rng);
        const auto p = scc(g);
        const auto reach = oracle::reachability(g);
        for (std::size_t c1 = 0; c1 < p.count(); ++c1)
            for (std::size_t c2 = c1 + 1; c2 < p.count(); ++c2)
                // A later class must never be reachable from an earlier one.
                CHECK_FALSE(reach[p.classes[c1].front()][p.classes[c2].front()]);
    }
}

TEST_CASE("condensation of the cycle-with-tail graph") {
    const auto g = DirectedGraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});
    const auto p = scc(g);
    const auto dag = condensation(g, p);
    REQUIRE(dag.node_count == 2);
    const int big = p.class_of[0];
    const int tail = p.class_of[2];
    CHECK(dag.edges[big] == std::vector<int>{tail});
    CHECK(dag.edges[tail].empty());
}

TEST_CASE("condensation of strongly connected and edgeless graphs") {
    DirectedGraph cyc(4);
    for (int i = 0; i < 4; ++i) cyc.add_edge(i, (i + 1) % 4);
    const auto dag = condensation(cyc, scc(cyc));
    CHECK(dag.node_count == 1);
    CHECK(dag.edges[0].empty());

    DirectedGraph bare(3);
    const auto dag2 = condensation(bare, scc(bare));
    CHECK(dag2.node_count == 3);
}

TEST_CASE("condensation rejects a partition from another graph") {
    const auto g1 = DirectedGraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});
    const auto g2 = DirectedGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(condensation(g1, scc(g2)), std::invalid_argument);
}

TEST_CASE("condensation is acyclic on random graphs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_digraph(11, 0.2, rng);
        const auto dag = condensation(g, scc(g));
        CHECK(topological_order(dag).has_value());
    }
}

TEST_CASE("is_irreducible on the spec instances") {
    CHECK(is_irreducible(ConfidenceMatrix::from_rows({{0, 1}, {1, 0}})));
    CHECK_FALSE(is_irreducible(ConfidenceMatrix::from_rows({{1, 0}, {0.5, 0.5}})));
}

TEST_CASE("is_irreducible matches reachability on random 8x8 patterns") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = oracle::random_stochastic(8, 0.2, rng);
        const auto reach = oracle::reachability(m.induced_graph());
        bool strongly_connected = true;
        for (int i = 0; i < 8 && strongly_connected; ++i)
            for (int j = 0; j < 8 && strongly_connected; ++j)
                if (!reach[i][j]) strongly_connected = false;
        CHECK(is_irreducible(m) == strongly_connected);
    }
}

TEST_CASE("is_primitive on the spec instances") {
    CHECK_FALSE(is_primitive(ConfidenceMatrix::from_rows({{0, 1}, {1, 0}})));
    CHECK(is_primitive(ConfidenceMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})));
}

TEST_CASE("irreducible matrix with a positive diagonal entry is primitive") {
    // 3-cycle plus one self-loop.
    auto m = ConfidenceMatrix::from_rows({{0.5, 0.5, 0}, {0, 0, 1}, {1, 0, 0}});
    CHECK(is_irreducible(m));
    CHECK(is_primitive(m));
    const std::size_t bound = 3 * 3 - 2 * 3 + 2;
    CHECK(oracle::primitive_by_powers(m.pattern(), bound));
}

TEST_CASE("is_primitive agrees with sequential pattern powers") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> prob(0.1, 0.6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto m = oracle::random_stochastic(n, prob(rng), rng);
        const std::size_t bound = n * n - 2 * n + 2;
        CHECK(is_primitive(m) == oracle::primitive_by_powers(m.pattern(), bound));
    }
}

TEST_CASE("primitive implies irreducible, converse fails on the 2-cycle") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = oracle::random_stochastic(2 + trial % 6, 0.3, rng);
        if (is_primitive(m)) CHECK(is_irreducible(m));
    }
    const auto cycle = ConfidenceMatrix::from_rows({{0, 1}, {1, 0}});
    CHECK(is_irreducible(cycle));
    CHECK_FALSE(is_primitive(cycle));
}

TEST_CASE("classify: pooled agent is the only essential class") {
    // Agents 0 and 1 defer to 2; 2 listens only to itself.
    const auto m = ConfidenceMatrix::from_rows(
        {{0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}, {0.0, 0.0, 1.0}});
    const auto c = classify(m);
    REQUIRE(c.g() == 1);
    CHECK(c.essential_classes[0] == std::vector<int>{2});
    CHECK(c.inessential_classes.size() == 2);
    CHECK(c.is_essential == std::vector<bool>{false, false, true});
}

TEST_CASE("classify: one source pooled by three downstream chains") {
    // Topology in the spirit of the paper's shift illustration: one
    // essential singleton, three inessential two-agent classes hanging off
    // it in a chain.
    DirectedGraph g(7);
    for (int v = 0; v < 7; ++v) g.add_edge(v, v);
    g.add_edge(1, 2);
    g.add_edge(2, 1);  // class B
    g.add_edge(3, 4);
    g.add_edge(4, 3);  // class C
    g.add_edge(5, 6);
    g.add_edge(6, 5);  // class D
    g.add_edge(1, 0);  // B -> source
    g.add_edge(3, 1);  // C -> B
    g.add_edge(5, 3);  // D -> C
    const auto c = classify_graph(g);
    CHECK(c.g() == 1);
    CHECK(c.essential_classes[0] == std::vector<int>{0});
    CHECK(c.inessential_classes.size() == 3);
}

TEST_CASE("classify: consensus matrix puts everyone in one essential class") {
    const auto m = ConfidenceMatrix::consensus({0.2, 0.3, 0.5});
    const auto c = classify(m);
    REQUIRE(c.g() == 1);
    CHECK(c.essential_classes[0] == std::vector<int>{0, 1, 2});
    CHECK(c.inessential_classes.empty());
    for (auto l : c.refined_label) CHECK(l == MindLabel::closed_minded);
}

TEST_CASE("classify agrees with the no-edge-leaves oracle on random graphs") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_real_distribution<double> prob(0.05, 0.45);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = oracle::random_digraph(size(rng), prob(rng), rng);
        const auto c = classify_graph(g);

        // Union of classes is a partition of V.
        std::size_t covered = 0;
        for (const auto& cls : c.essential_classes) covered += cls.size();
        for (const auto& cls : c.inessential_classes) covered += cls.size();
        REQUIRE(covered == g.size());

        for (const auto& cls : c.essential_classes) CHECK(oracle::class_is_essential(g, cls));
        for (const auto& cls : c.inessential_classes)
            CHECK_FALSE(oracle::class_is_essential(g, cls));
        if (g.size() >= 1) CHECK(c.g() >= 1);
    }
}

TEST_CASE("refined labels follow the subgraph-completeness rule") {
    // 3-cycle sink: essential but not complete -> moderate-minded.
    DirectedGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(3, 0);  // follower
    auto c = classify_graph(g);
    REQUIRE(c.g() == 1);
    CHECK(c.refined_label[0] == MindLabel::moderate_minded);
    CHECK(c.refined_label[3] == MindLabel::open_minded);

    // Complete 2-clique sink -> closed-minded; self-loops ignored.
    DirectedGraph h(3);
    h.add_edge(0, 1);
    h.add_edge(1, 0);
    h.add_edge(0, 0);
    h.add_edge(2, 0);
    c = classify_graph(h);
    CHECK(c.refined_label[0] == MindLabel::closed_minded);
    CHECK(c.refined_label[1] == MindLabel::closed_minded);

    // Essential singleton: vacuously complete.
    DirectedGraph s(2);
    s.add_edge(1, 0);
    c = classify_graph(s);
    CHECK(c.refined_label[0] == MindLabel::closed_minded);
}

TEST_CASE("self-loops never affect sink-ness") {
    DirectedGraph g(2);
    g.add_edge(0, 1);
    auto without = classify_graph(g);
    g.add_edge(0, 0);
    g.add_edge(1, 1);
    auto with = classify_graph(g);
    CHECK(without.is_essential == with.is_essential);
}

TEST_CASE("gantmacher_form on a two-block chain") {
    // Graph 0 -> 1 with self-loops: {1} essential, {0} inessential.
    const auto m = ConfidenceMatrix::from_rows({{0.5, 0.5}, {0.0, 1.0}});
    const auto form = gantmacher_form(m);
    REQUIRE(form.g == 1);
    REQUIRE(form.block_boundaries.size() == 2);
    CHECK(form.permutation == std::vector<int>{1, 0});
    CHECK(form.block_boundaries[0] == std::pair<int, int>{0, 1});
    CHECK(form.block_boundaries[1] == std::pair<int, int>{1, 2});
}

TEST_CASE("gantmacher_form: strongly connected matrix is one block") {
    const auto m = ConfidenceMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    const auto form = gantmacher_form(m);
    CHECK(form.g == 1);
    CHECK(form.block_boundaries.size() == 1);
}

namespace {

// The full block-structure invariant: lower block-triangular, first g
// block rows have no mass outside their own diagonal block, all diagonal
// blocks irreducible.
void check_gantmacher_invariants(const ConfidenceMatrix& m, const GantmacherForm& form,
                                 double threshold = kEdgeThreshold) {
    const auto pm = permute(m, form.permutation);
    const std::size_t blocks = form.block_boundaries.size();
    for (std::size_t bi = 0; bi < blocks; ++bi) {
        const auto [ri, ri_end] = form.block_boundaries[bi];
        for (std::size_t bj = 0; bj < blocks; ++bj) {
            const auto [cj, cj_end] = form.block_boundaries[bj];
            if (bi == bj) continue;
            const bool must_be_zero = bi < form.g || bj > bi;
            if (!must_be_zero) continue;
            for (int i = ri; i < ri_end; ++i)
                for (int j = cj; j < cj_end; ++j) {
                    REQUIRE(pm(i, j) <= threshold);
                }
        }
        // Diagonal block irreducible.
        ConfidenceMatrix block(static_cast<std::size_t>(ri_end - ri));
        for (int i = ri; i < ri_end; ++i)
            for (int j = ri; j < ri_end; ++j) block(i - ri, j - ri) = pm(i, j);
        REQUIRE(is_irreducible(block));
    }
}

}  // namespace

TEST_CASE("gantmacher invariants hold on random stochastic matrices") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> prob(0.05, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 14;
        const auto m = oracle::random_stochastic(n, prob(rng), rng);
        const auto form = gantmacher_form(m);
        CHECK(form.g == classify(m).g());
        check_gantmacher_invariants(m, form);
    }
}

TEST_CASE("already block-triangular matrices keep a valid (not necessarily identity) form") {
    const auto m = ConfidenceMatrix::from_rows({{1.0, 0.0}, {0.5, 0.5}});
    const auto form = gantmacher_form(m);
    CHECK(form.g == 1);
    check_gantmacher_invariants(m, form);
}
