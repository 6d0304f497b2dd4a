#pragma once

#include "agmetrics/lifecycle.hpp"
#include "agmetrics/linalg.hpp"
#include "agmetrics/types.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace agm {

/// Static mode scores every vulnerability at full base exploitability
/// (weight 1); temporal mode reweights by exploit availability at the
/// vulnerability's age on the given day offset.
enum class ScoringMode { Static, Temporal };

std::string_view to_string(ScoringMode m);
ScoringMode scoring_mode_from_string(std::string_view s); // throws ParseError

/// Row-stochastic transition matrix over the graph's canonical state order
/// (transients first, start at index 0, goals last). Rows are from-states;
/// distribution row vectors multiply on the left.
struct TransitionMatrix {
    long day_offset = 0;
    std::vector<std::string> state_order;
    std::size_t transient_count = 0;
    Matrix entries;

    std::size_t goal_count() const { return state_order.size() - transient_count; }
    Matrix q_block() const; // transient -> transient
    Matrix r_block() const; // transient -> goal
};

/// Builds the day's transition matrix: each non-goal row normalizes the
/// successors' effective exploitability scores; goal rows are identity.
/// Throws NumericError for a row whose successor scores sum to zero.
TransitionMatrix build_transition_matrix(const AttackGraph& g, long day_offset,
                                         const LifecycleParams& p, ScoringMode mode);

/// N = (I-Q)^{-1} via direct dense solve with partial pivoting. The residual
/// ||(I-Q)N - I||_max is checked against 1e-8; a violation throws NumericError.
Matrix fundamental_matrix(const TransitionMatrix& t);

struct NodeRankEntry {
    std::string state_id;
    double expected_visits;
};

/// Start row of N sorted by expected visits descending; ties keep canonical
/// state order.
std::vector<NodeRankEntry> node_rank(const Matrix& fundamental, const TransitionMatrix& t,
                                     std::size_t start = 0);

/// Expected transitions until absorption from `start`: the row sum of N.
double expected_path_length(const Matrix& fundamental, std::size_t start = 0);

/// Start row of B = N R: probability of ending in each goal, in canonical
/// goal order.
std::vector<double> absorption_probabilities(const Matrix& fundamental, const TransitionMatrix& t,
                                             std::size_t start = 0);

/// Entry (start, goal) of P^m by iterated vector-matrix products.
double finite_horizon_absorption(const TransitionMatrix& t, std::size_t start, std::size_t goal,
                                 long m);

/// Probability of having been absorbed in any goal by step m.
double finite_horizon_total_absorption(const TransitionMatrix& t, std::size_t start, long m);

/// Bundle of the chain metrics for one day.
struct ChainAnalysis {
    long day_offset = 0;
    Matrix fundamental;
    std::vector<NodeRankEntry> node_rank;
    double epl = 0.0;
    std::vector<std::pair<std::string, double>> absorption; // goal id -> probability
    std::map<long, double> finite_horizon;                  // horizon -> total absorption
};

ChainAnalysis analyze_chain(const TransitionMatrix& t, std::span<const long> horizons = {});

/// Full matrix as CSV: header row of state ids, entries at 12 significant
/// digits.
std::string matrix_csv(const TransitionMatrix& t);

} // namespace agm
