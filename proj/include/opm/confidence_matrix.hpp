#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "opm/bitmatrix.hpp"
#include "opm/digraph.hpp"

namespace opm {

/// Entries at or below this induce no edge in the confidence graph.
/// Repeated convex blending leaves behind sub-representable residues that
/// must not keep the graph connected.
inline constexpr double kEdgeThreshold = 1e-15;

inline constexpr double kRowSumTol = 1e-12;

/// Square nonnegative weight matrix a_ij = confidence agent i places on
/// agent j. Row-stochasticity is an invariant of process matrices and is
/// checked by validate_stochastic(); the container itself only enforces
/// shape and nonnegativity so that the graph predicates below can also be
/// applied to general adjacency patterns.
class ConfidenceMatrix {
public:
    ConfidenceMatrix() = default;
    explicit ConfidenceMatrix(std::size_t n, double fill = 0.0);

    static ConfidenceMatrix identity(std::size_t n);
    /// All rows equal to the given stochastic row (a consensus matrix).
    static ConfidenceMatrix consensus(const std::vector<double>& row);
    /// Builds from dense rows; rejects ragged/non-square input and
    /// negative entries.
    static ConfidenceMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return w_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const { return {&w_[i * n_], n_}; }
    std::span<double> row(std::size_t i) { return {&w_[i * n_], n_}; }

    double row_sum(std::size_t i) const;
    double max_row_sum_deviation() const;
    bool is_row_stochastic(double tol = kRowSumTol) const;
    bool has_positive_diagonal(double threshold = kEdgeThreshold) const;
    /// Throws std::invalid_argument unless every row sums to 1 within tol.
    void validate_stochastic(double tol = kRowSumTol) const;

    DirectedGraph induced_graph(double threshold = kEdgeThreshold) const;
    BitMatrix pattern(double threshold = kEdgeThreshold) const;

    bool operator==(const ConfidenceMatrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> w_;  // row-major
};

/// True iff the induced digraph is strongly connected.
bool is_irreducible(const ConfidenceMatrix& m, double threshold = kEdgeThreshold);

/// True iff some power of the zero pattern is strictly positive. Powers
/// are probed by repeated squaring up to the Wielandt bound n^2 - 2n + 2,
/// past which no new positivity can appear.
bool is_primitive(const ConfidenceMatrix& m, double threshold = kEdgeThreshold);

}  // namespace opm
