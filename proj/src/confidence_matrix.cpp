#include "opm/confidence_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace opm {

ConfidenceMatrix::ConfidenceMatrix(std::size_t n, double fill) : n_(n), w_(n * n, fill) {
    if (fill < 0.0) throw std::invalid_argument("ConfidenceMatrix: negative fill");
}

ConfidenceMatrix ConfidenceMatrix::identity(std::size_t n) {
    ConfidenceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ConfidenceMatrix ConfidenceMatrix::consensus(const std::vector<double>& row) {
    ConfidenceMatrix m(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j];
    return m;
}

ConfidenceMatrix ConfidenceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    ConfidenceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw std::invalid_argument("ConfidenceMatrix: row " + std::to_string(i) +
                                        " has length " + std::to_string(rows[i].size()) +
                                        ", expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i][j] < 0.0 || !std::isfinite(rows[i][j]))
                throw std::invalid_argument("ConfidenceMatrix: entry (" + std::to_string(i) +
                                            "," + std::to_string(j) + ") is not a finite nonnegative value");
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

double ConfidenceMatrix::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += w_[i * n_ + j];
    return s;
}

double ConfidenceMatrix::max_row_sum_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < n_; ++i) dev = std::max(dev, std::abs(row_sum(i) - 1.0));
    return dev;
}

bool ConfidenceMatrix::is_row_stochastic(double tol) const {
    if (n_ == 0) return true;
    return max_row_sum_deviation() <= tol;
}

bool ConfidenceMatrix::has_positive_diagonal(double threshold) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (!((*this)(i, i) > threshold)) return false;
    return true;
}

void ConfidenceMatrix::validate_stochastic(double tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const double s = row_sum(i);
        if (std::abs(s - 1.0) > tol)
            throw std::invalid_argument("ConfidenceMatrix: row " + std::to_string(i) +
                                        " sums to " + std::to_string(s) + ", not 1");
    }
}

DirectedGraph ConfidenceMatrix::induced_graph(double threshold) const {
    DirectedGraph g(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (w_[i * n_ + j] > threshold) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

BitMatrix ConfidenceMatrix::pattern(double threshold) const {
    BitMatrix b(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (w_[i * n_ + j] > threshold) b.set(i, j);
    return b;
}

bool is_irreducible(const ConfidenceMatrix& m, double threshold) {
    if (m.size() == 0) return false;
    return scc(m.induced_graph(threshold)).count() == 1;
}

bool is_primitive(const ConfidenceMatrix& m, double threshold) {
    const std::size_t n = m.size();
    if (n == 0) return false;
    if (n == 1) return m(0, 0) > threshold;
    if (!is_irreducible(m, threshold)) return false;

    // Irreducible with n >= 2 means no zero rows, so positivity of a power
    // persists for all higher powers; probing powers 2^k up to the Wielandt
    // bound is exhaustive.
    const std::size_t wielandt = n * n - 2 * n + 2;
    BitMatrix p = m.pattern(threshold);
    std::size_t exponent = 1;
    while (true) {
        if (p.all_set()) return true;
        if (exponent >= wielandt) return false;
        p = p.multiply(p);
        exponent *= 2;
    }
}

}  // namespace opm
