#pragma once

#include "agmetrics/graph_io.hpp"
#include "agmetrics/markov.hpp"
#include "agmetrics/types.hpp"

#include <vector>

namespace agm {

/// Per-state impact rewards aligned with the canonical state order. The start
/// state is always 0: the attacker's own foothold costs the defender nothing.
struct RewardVector {
    std::vector<double> values;
};

/// Rewards from each state's C/I/A impact subscore. An impact_override wins
/// when present; a state whose vulnerability has neither factors nor override
/// gets reward 0 and a warning diagnostic (appended to `warnings` when given).
RewardVector reward_vector(const AttackGraph& g, std::vector<Diagnostic>* warnings = nullptr);

/// Expected impact at step T: sum_i r_i * P{X_T = s_i} with X_0 = start.
double expected_impact(const TransitionMatrix& t, const RewardVector& r, std::size_t start,
                       long steps);

/// Total accumulated impact until absorption: expected transient visits times
/// transient rewards, plus absorption probabilities times goal rewards.
double cumulative_expected_impact(const Matrix& fundamental, const TransitionMatrix& t,
                                  const RewardVector& r, std::size_t start);

} // namespace agm
