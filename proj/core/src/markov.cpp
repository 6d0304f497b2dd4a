#include "agmetrics/markov.hpp"

#include "agmetrics/cvss.hpp"
#include "agmetrics/errors.hpp"
#include "agmetrics/format.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace agm {

std::string_view to_string(ScoringMode m) {
    return m == ScoringMode::Static ? "static" : "temporal";
}

ScoringMode scoring_mode_from_string(std::string_view s) {
    if (s == "static") return ScoringMode::Static;
    if (s == "temporal") return ScoringMode::Temporal;
    throw ParseError("unknown mode '" + std::string(s) + "' (expected static or temporal)");
}

Matrix TransitionMatrix::q_block() const {
    Matrix q(transient_count, transient_count);
    for (std::size_t i = 0; i < transient_count; ++i) {
        for (std::size_t j = 0; j < transient_count; ++j) q(i, j) = entries(i, j);
    }
    return q;
}

Matrix TransitionMatrix::r_block() const {
    const std::size_t goals = goal_count();
    Matrix r(transient_count, goals);
    for (std::size_t i = 0; i < transient_count; ++i) {
        for (std::size_t j = 0; j < goals; ++j) r(i, j) = entries(i, transient_count + j);
    }
    return r;
}

TransitionMatrix build_transition_matrix(const AttackGraph& g, long day_offset,
                                         const LifecycleParams& p, ScoringMode mode) {
    const std::size_t n = g.states.size();
    TransitionMatrix t;
    t.day_offset = day_offset;
    t.transient_count = g.transient_count();
    t.entries = Matrix(n, n);
    t.state_order.reserve(n);
    for (const auto& s : g.states) t.state_order.push_back(s.id);

    // Effective exploitability of entering each state on this day.
    std::vector<double> score(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& st = g.states[j];
        if (!st.cve) continue; // start state; never a transition target
        const VulnerabilityRecord* v = g.find_vulnerability(*st.cve);
        if (!v) throw ParseError("state '" + st.id + "' references unknown vulnerability '" + *st.cve + "'");
        const double w = mode == ScoringMode::Temporal
                             ? temporal_weight(*v, g.scoring_date, day_offset, p)
                             : 1.0;
        score[j] = cvss::effective_exploitability(*v, w);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (g.states[i].kind == StateKind::goal) {
            t.entries(i, i) = 1.0; // absorbing
            continue;
        }
        const auto succ = g.successors(i);
        double total = 0.0;
        for (std::size_t j : succ) total += score[j];
        if (!(total > 0.0)) {
            throw NumericError("degenerate transition row at state '" + g.states[i].id +
                               "' (successor scores sum to 0)");
        }
        for (std::size_t j : succ) {
            t.entries(i, j) = score[j] / total;
        }
    }
    return t;
}

Matrix fundamental_matrix(const TransitionMatrix& t) {
    const std::size_t m = t.transient_count;
    const Matrix q = t.q_block();
    Matrix i_minus_q = Matrix::identity(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) i_minus_q(i, j) -= q(i, j);
    }
    Matrix fundamental;
    try {
        fundamental = solve_linear(i_minus_q, Matrix::identity(m));
    } catch (const NumericError& e) {
        throw NumericError(std::string("fundamental matrix: (I-Q) block is singular: ") + e.what());
    }

    // Recompute I-Q (solve_linear consumed its copy) and check the residual.
    Matrix check = Matrix::identity(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) check(i, j) -= q(i, j);
    }
    const double residual = max_abs_diff(matmul(check, fundamental), Matrix::identity(m));
    if (residual >= 1e-8) {
        throw NumericError("fundamental matrix residual too large: " + format_sig(residual, 3));
    }
    return fundamental;
}

std::vector<NodeRankEntry> node_rank(const Matrix& fundamental, const TransitionMatrix& t,
                                     std::size_t start) {
    std::vector<NodeRankEntry> out;
    out.reserve(t.transient_count);
    for (std::size_t j = 0; j < t.transient_count; ++j) {
        out.push_back({t.state_order[j], fundamental(start, j)});
    }
    // stable_sort keeps canonical order for ties
    std::stable_sort(out.begin(), out.end(), [](const NodeRankEntry& a, const NodeRankEntry& b) {
        return a.expected_visits > b.expected_visits;
    });
    return out;
}

double expected_path_length(const Matrix& fundamental, std::size_t start) {
    double sum = 0.0;
    for (std::size_t j = 0; j < fundamental.cols(); ++j) sum += fundamental(start, j);
    return sum;
}

std::vector<double> absorption_probabilities(const Matrix& fundamental, const TransitionMatrix& t,
                                             std::size_t start) {
    const Matrix b = matmul(fundamental, t.r_block());
    std::vector<double> out(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] = b(start, j);
    return out;
}

double finite_horizon_absorption(const TransitionMatrix& t, std::size_t start, std::size_t goal,
                                 long m) {
    std::vector<double> dist(t.state_order.size(), 0.0);
    dist[start] = 1.0;
    for (long step = 0; step < m; ++step) dist = vecmat(dist, t.entries);
    return dist[goal];
}

double finite_horizon_total_absorption(const TransitionMatrix& t, std::size_t start, long m) {
    std::vector<double> dist(t.state_order.size(), 0.0);
    dist[start] = 1.0;
    for (long step = 0; step < m; ++step) dist = vecmat(dist, t.entries);
    double total = 0.0;
    for (std::size_t j = t.transient_count; j < dist.size(); ++j) total += dist[j];
    return total;
}

ChainAnalysis analyze_chain(const TransitionMatrix& t, std::span<const long> horizons) {
    ChainAnalysis a;
    a.day_offset = t.day_offset;
    a.fundamental = fundamental_matrix(t);
    a.node_rank = node_rank(a.fundamental, t);
    a.epl = expected_path_length(a.fundamental);
    const auto absorb = absorption_probabilities(a.fundamental, t);
    for (std::size_t j = 0; j < absorb.size(); ++j) {
        a.absorption.emplace_back(t.state_order[t.transient_count + j], absorb[j]);
    }
    for (long h : horizons) {
        a.finite_horizon[h] = finite_horizon_total_absorption(t, 0, h);
    }
    return a;
}

std::string matrix_csv(const TransitionMatrix& t) {
    std::ostringstream out;
    out << "state";
    for (const auto& id : t.state_order) out << ',' << id;
    out << '\n';
    const std::size_t n = t.state_order.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << t.state_order[i];
        for (std::size_t j = 0; j < n; ++j) {
            out << ',' << format_sig(t.entries(i, j), 12);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace agm
