#pragma once

// Brute-force reference implementations kept independent of the library's
// algorithmic paths. Everything here is O(n^3) or worse on purpose.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "opm/confidence_matrix.hpp"
#include "opm/digraph.hpp"

namespace oracle {

// Reflexive-transitive closure by Floyd-Warshall.
inline std::vector<std::vector<bool>> reachability(const opm::DirectedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (int j : g.successors(static_cast<int>(i))) reach[i][j] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    return reach;
}

// Equivalence classes of mutual reachability, each sorted, ordered by
// smallest member.
inline std::vector<std::vector<int>> scc_classes(const opm::DirectedGraph& g) {
    const std::size_t n = g.size();
    const auto reach = reachability(g);
    std::vector<bool> assigned(n, false);
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<int> cls;
        for (std::size_t j = i; j < n; ++j)
            if (!assigned[j] && reach[i][j] && reach[j][i]) {
                cls.push_back(static_cast<int>(j));
                assigned[j] = true;
            }
        classes.push_back(std::move(cls));
    }
    return classes;
}

// A class is essential iff no edge leaves it.
inline bool class_is_essential(const opm::DirectedGraph& g, const std::vector<int>& members) {
    for (int u : members)
        for (int v : g.successors(u))
            if (std::find(members.begin(), members.end(), v) == members.end()) return false;
    return true;
}

// Sequential pattern powers B, B^2, ..., checked entry-by-entry against
// strict positivity (exact boolean arithmetic).
inline bool primitive_by_powers(const opm::BitMatrix& base, std::size_t max_power) {
    opm::BitMatrix p = base;
    for (std::size_t t = 1; t <= max_power; ++t) {
        if (p.all_set()) return true;
        p = p.multiply(base);
    }
    return false;
}

// Random digraph with edge probability prob (self-loops included).
inline opm::DirectedGraph random_digraph(std::size_t n, double prob, std::mt19937_64& rng) {
    opm::DirectedGraph g(n);
    std::bernoulli_distribution edge(prob);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (edge(rng)) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

// Random row-stochastic matrix whose sparsity pattern has the given edge
// probability; every row keeps at least one positive entry.
inline opm::ConfidenceMatrix random_stochastic(std::size_t n, double prob,
                                               std::mt19937_64& rng) {
    opm::ConfidenceMatrix m(n);
    std::bernoulli_distribution edge(prob);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j)
            if (edge(rng)) {
                m(i, j) = weight(rng);
                any = true;
            }
        if (!any) m(i, pick(rng)) = 1.0;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        for (std::size_t j = 0; j < n; ++j) m(i, j) /= s;
    }
    return m;
}

// Naive two-pass long-double central moments.
struct Moments {
    long double m2 = 0, m3 = 0, m4 = 0;
};

inline Moments central_moments(const std::vector<double>& v) {
    long double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<long double>(v.size());
    Moments m;
    for (double x : v) {
        const long double d = x - mean;
        m.m2 += d * d;
        m.m3 += d * d * d;
        m.m4 += d * d * d * d;
    }
    m.m2 /= v.size();
    m.m3 /= v.size();
    m.m4 /= v.size();
    return m;
}

inline double skewness(const std::vector<double>& returns) {
    const Moments m = central_moments(returns);
    return static_cast<double>(m.m3 / std::pow(m.m2, 1.5L));
}

inline double excess_kurtosis(const std::vector<double>& returns) {
    const Moments m = central_moments(returns);
    return static_cast<double>(m.m4 / (m.m2 * m.m2) - 3.0L);
}

}  // namespace oracle
