#include "opm/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "opm/classification.hpp"

namespace opm {

EpsilonProfile EpsilonProfile::uniform(std::size_t n, double value) {
    if (value < 0.0) throw std::invalid_argument("EpsilonProfile: negative radius");
    return {std::vector<double>(n, value)};
}

void EpsilonProfile::validate() const {
    for (double e : eps)
        if (!(e >= 0.0)) throw std::invalid_argument("EpsilonProfile: radii must be >= 0");
}

std::string to_string(OpinionPattern p) {
    switch (p) {
        case OpinionPattern::consensus: return "consensus";
        case OpinionPattern::polarization: return "polarization";
        case OpinionPattern::fragmentation: return "fragmentation";
        case OpinionPattern::non_converged: return "non-converged";
    }
    return "?";
}

OpinionVector pool(const ConfidenceMatrix& a, const OpinionVector& x) {
    const std::size_t n = a.size();
    if (x.size() != n)
        throw std::invalid_argument("pool: opinion vector length " + std::to_string(x.size()) +
                                    " does not match matrix size " + std::to_string(n));
    OpinionVector out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
        out[i] = s;
    }
    return out;
}

ConfidenceMatrix bc_matrix(const OpinionVector& x, const EpsilonProfile& eps) {
    const std::size_t n = x.size();
    if (eps.size() != n)
        throw std::invalid_argument("bc_matrix: epsilon profile length does not match opinions");
    ConfidenceMatrix c(n);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
        members.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(x[i] - x[j]) <= eps.at(i)) members.push_back(j);
        const double w = 1.0 / static_cast<double>(members.size());
        for (std::size_t j : members) c(i, j) = w;
    }
    return c;
}

namespace {

double max_abs_change(const OpinionVector& a, const OpinionVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

void finalize_report(OpinionRun& run, const OpinionVector& final_x, const IterationOptions& opt) {
    run.report.clusters = cluster_opinions(final_x, opt.cluster_tol);
    run.report.pattern = run.report.converged
                             ? pattern_from_clusters(run.report.clusters.size())
                             : OpinionPattern::non_converged;
}

template <typename StepMatrix>
OpinionRun iterate(const OpinionVector& x0, const IterationOptions& opt, StepMatrix next_matrix) {
    OpinionRun run;
    OpinionVector x = x0;
    run.states.push_back(x);
    run.cluster_counts.push_back(static_cast<int>(cluster_opinions(x, opt.cluster_tol).size()));

    for (int t = 1; t <= opt.max_t; ++t) {
        OpinionVector next = pool(next_matrix(x), x);
        const double change = max_abs_change(next, x);
        x = std::move(next);
        if (opt.record_states) {
            run.states.push_back(x);
            run.cluster_counts.push_back(
                static_cast<int>(cluster_opinions(x, opt.cluster_tol).size()));
        }
        if (change < opt.tol) {
            run.report.converged = true;
            run.report.t_stable = t;
            break;
        }
    }
    if (!opt.record_states) {
        run.states.push_back(x);
        run.cluster_counts.push_back(static_cast<int>(cluster_opinions(x, opt.cluster_tol).size()));
    }
    finalize_report(run, x, opt);
    return run;
}

}  // namespace

OpinionRun iterate_homogeneous(const ConfidenceMatrix& a, const OpinionVector& x0,
                               const IterationOptions& opt) {
    a.validate_stochastic();
    return iterate(x0, opt, [&](const OpinionVector&) -> const ConfidenceMatrix& { return a; });
}

OpinionRun iterate_bounded_confidence(const OpinionVector& x0, const EpsilonProfile& eps,
                                      const IterationOptions& opt) {
    eps.validate();
    return iterate(x0, opt, [&](const OpinionVector& x) { return bc_matrix(x, eps); });
}

bool degroot_consensus_condition(const ConfidenceMatrix& a, double threshold) {
    const std::size_t n = a.size();
    const BitMatrix p = a.pattern(threshold);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool shared = false;
            for (std::size_t k = 0; k < n && !shared; ++k)
                shared = p.get(i, k) && p.get(j, k);
            if (!shared) return false;
        }
    }
    return n > 0;
}

bool berger_positive_column_condition(const ConfidenceMatrix& a, int t_max, double threshold) {
    if (a.size() == 0 || t_max < 1) return false;
    const BitMatrix base = a.pattern(threshold);
    BitMatrix power = base;
    for (int t = 1; t <= t_max; ++t) {
        if (power.has_full_column()) return true;
        if (t < t_max) power = power.multiply(base);
    }
    return false;
}

namespace {

ConfidenceMatrix extract_block(const ConfidenceMatrix& m, const std::vector<int>& permutation,
                               int begin, int end) {
    ConfidenceMatrix block(static_cast<std::size_t>(end - begin));
    for (int i = begin; i < end; ++i)
        for (int j = begin; j < end; ++j)
            block(i - begin, j - begin) = m(permutation[i], permutation[j]);
    return block;
}

}  // namespace

ConvergenceCheck gantmacher_convergence_check(const ConfidenceMatrix& a, double threshold) {
    const GantmacherForm form = gantmacher_form(a, threshold);
    ConvergenceCheck check;
    check.limit_exists = true;
    for (const auto& [begin, end] : form.block_boundaries) {
        if (!is_primitive(extract_block(a, form.permutation, begin, end), threshold)) {
            check.limit_exists = false;
            break;
        }
    }
    check.consensus =
        check.limit_exists && form.g == 1 && form.block_boundaries.size() == 1;
    return check;
}

std::vector<OpinionCluster> cluster_opinions(const OpinionVector& x, double cluster_tol) {
    std::vector<OpinionCluster> clusters;
    if (x.empty()) return clusters;

    std::vector<int> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return x[i] < x[j]; });

    OpinionCluster current;
    current.members.push_back(order[0]);
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (x[order[k]] - x[order[k - 1]] > cluster_tol) {
            clusters.push_back(std::move(current));
            current = {};
        }
        current.members.push_back(order[k]);
    }
    clusters.push_back(std::move(current));

    for (auto& c : clusters) {
        double s = 0.0;
        for (int i : c.members) s += x[i];
        c.representative = s / static_cast<double>(c.members.size());
        std::sort(c.members.begin(), c.members.end());
    }
    return clusters;
}

OpinionPattern pattern_from_clusters(std::size_t cluster_count) {
    if (cluster_count <= 1) return OpinionPattern::consensus;
    if (cluster_count == 2) return OpinionPattern::polarization;
    return OpinionPattern::fragmentation;
}

}  // namespace opm
