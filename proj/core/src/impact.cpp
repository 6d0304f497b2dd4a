#include "agmetrics/impact.hpp"

#include "agmetrics/cvss.hpp"
#include "agmetrics/errors.hpp"

namespace agm {

RewardVector reward_vector(const AttackGraph& g, std::vector<Diagnostic>* warnings) {
    RewardVector r;
    r.values.resize(g.states.size(), 0.0);
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        const auto& st = g.states[i];
        if (st.kind == StateKind::start || !st.cve) continue;
        const VulnerabilityRecord* v = g.find_vulnerability(*st.cve);
        if (!v) throw ParseError("state '" + st.id + "' references unknown vulnerability '" + *st.cve + "'");
        if (v->impact_override) {
            r.values[i] = *v->impact_override;
        } else if (v->has_impact_factors()) {
            r.values[i] = cvss::impact_score(*v->conf_impact, *v->integ_impact, *v->avail_impact).raw;
        } else if (warnings) {
            warnings->push_back({DiagCode::bad_factor_value,
                                 "vulnerability '" + v->cve_id +
                                     "' has no C/I/A factors and no impact_override; reward defaults to 0"});
        }
    }
    return r;
}

double expected_impact(const TransitionMatrix& t, const RewardVector& r, std::size_t start,
                       long steps) {
    if (r.values.size() != t.state_order.size()) {
        throw NumericError("reward vector dimension does not match the state count");
    }
    std::vector<double> dist(t.state_order.size(), 0.0);
    dist[start] = 1.0;
    for (long s = 0; s < steps; ++s) dist = vecmat(dist, t.entries);
    double ei = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) ei += r.values[i] * dist[i];
    return ei;
}

double cumulative_expected_impact(const Matrix& fundamental, const TransitionMatrix& t,
                                  const RewardVector& r, std::size_t start) {
    if (r.values.size() != t.state_order.size()) {
        throw NumericError("reward vector dimension does not match the state count");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < t.transient_count; ++j) {
        total += fundamental(start, j) * r.values[j];
    }
    const auto absorb = absorption_probabilities(fundamental, t, start);
    for (std::size_t g = 0; g < absorb.size(); ++g) {
        total += absorb[g] * r.values[t.transient_count + g];
    }
    return total;
}

} // namespace agm
