#include "opm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace opm::io {

std::string format_double(double v) {
    // Try increasing precision until the value round-trips; 17 significant
    // digits always do.
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

DirectedGraph parse_edge_list(std::istream& in) {
    struct Edge {
        int from, to;
    };
    std::vector<Edge> edges;
    int max_vertex = -1;
    std::string line;
    int line_no = 0;
    bool saw_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long i, j;
        if (!(ls >> i)) continue;  // blank line
        saw_content = true;
        if (!(ls >> j)) throw ParseError("expected 'i j [w]'", line_no);
        double w = 1.0;
        ls >> w;  // optional weight
        std::string rest;
        if (ls >> rest) throw ParseError("trailing tokens after edge", line_no);
        if (i < 0 || j < 0) throw ParseError("negative vertex index", line_no);
        if (i > 1'000'000 || j > 1'000'000) throw ParseError("vertex index too large", line_no);
        if (w > 0.0) {
            edges.push_back({static_cast<int>(i), static_cast<int>(j)});
            max_vertex = std::max({max_vertex, static_cast<int>(i), static_cast<int>(j)});
        } else {
            max_vertex = std::max({max_vertex, static_cast<int>(i), static_cast<int>(j)});
        }
    }
    if (!saw_content) throw ParseError("no edges in input", line_no == 0 ? 1 : line_no);
    DirectedGraph g(static_cast<std::size_t>(max_vertex + 1));
    for (const auto& e : edges) g.add_edge(e.from, e.to);
    return g;
}

ConfidenceMatrix parse_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(cell, &pos);
                while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
                    ++pos;
                if (pos != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("bad numeric cell '" + cell + "'", line_no);
            }
        }
        if (row.empty()) throw ParseError("empty row", line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no rows in input", 1);
    try {
        return ConfidenceMatrix::from_rows(rows);
    } catch (const std::exception& err) {
        throw ParseError(err.what(), line_no);
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,price,mean_opinion,min_opinion,max_opinion,dividend,g,essential_agents,clusters\n";
    for (const auto& s : traj.steps) {
        out << s.t << ',' << format_double(s.price) << ',' << format_double(s.mean_opinion)
            << ',' << format_double(s.min_opinion) << ',' << format_double(s.max_opinion) << ','
            << format_double(s.dividend) << ',' << s.g << ',' << s.essential_agents << ','
            << s.clusters << '\n';
    }
}

void write_opinions_csv(std::ostream& out, const std::vector<OpinionVector>& states) {
    if (states.empty()) return;
    out << 't';
    for (std::size_t i = 0; i < states.front().size(); ++i) out << ",x_" << i;
    out << '\n';
    for (std::size_t t = 0; t < states.size(); ++t) {
        out << t;
        for (double v : states[t]) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_opinion_summary_csv(std::ostream& out, const std::vector<OpinionVector>& states,
                               const std::vector<int>& cluster_counts) {
    out << "t,min,max,mean,n_clusters\n";
    for (std::size_t t = 0; t < states.size(); ++t) {
        const auto& x = states[t];
        double mn = x.front(), mx = x.front(), sum = 0.0;
        for (double v : x) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
        }
        out << t << ',' << format_double(mn) << ',' << format_double(mx) << ','
            << format_double(sum / static_cast<double>(x.size())) << ',' << cluster_counts[t]
            << '\n';
    }
}

void write_mean_path_csv(std::ostream& out, const std::vector<double>& mean_path) {
    out << "t,price\n";
    for (std::size_t t = 0; t < mean_path.size(); ++t)
        out << t << ',' << format_double(mean_path[t]) << '\n';
}

void write_histogram_csv(std::ostream& out,
                         const std::vector<std::pair<double, std::vector<double>>>& sweep) {
    out << "epsilon,bin,bin_center,avg_rel_freq\n";
    for (const auto& [eps, freqs] : sweep) {
        const double width = 1.0 / static_cast<double>(freqs.size());
        for (std::size_t b = 0; b < freqs.size(); ++b) {
            out << format_double(eps) << ',' << b << ','
                << format_double((static_cast<double>(b) + 0.5) * width) << ','
                << format_double(freqs[b]) << '\n';
        }
    }
}

nlohmann::json classification_report(const AgentClassification& classification) {
    nlohmann::json j;
    j["g"] = classification.g();
    j["essential"] = classification.essential_classes;
    j["inessential"] = classification.inessential_classes;
    std::vector<std::string> labels;
    labels.reserve(classification.refined_label.size());
    for (MindLabel l : classification.refined_label) labels.push_back(to_string(l));
    j["labels"] = labels;
    return j;
}

nlohmann::json ensemble_report(const MonteCarloResult& result) {
    nlohmann::json j;
    j["runs"] = result.per_run.size();
    j["mean_path"] = result.mean_path;
    j["skewness"] = result.mean_path_stats.degenerate ? 0.0 : result.mean_path_stats.skewness;
    j["excess_kurtosis"] =
        result.mean_path_stats.degenerate ? 0.0 : result.mean_path_stats.excess_kurtosis;
    nlohmann::json per_run = nlohmann::json::array();
    for (std::size_t k = 0; k < result.per_run.size(); ++k) {
        nlohmann::json entry;
        entry["seed"] = result.run_seeds[k];
        entry["skewness"] = result.per_run[k].degenerate ? 0.0 : result.per_run[k].skewness;
        entry["excess_kurtosis"] =
            result.per_run[k].degenerate ? 0.0 : result.per_run[k].excess_kurtosis;
        if (result.per_run[k].degenerate) entry["degenerate"] = true;
        per_run.push_back(std::move(entry));
    }
    j["per_run"] = std::move(per_run);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace opm::io
