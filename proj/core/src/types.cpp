#include "agmetrics/types.hpp"

#include "agmetrics/errors.hpp"

#include <string>

namespace agm {

std::string_view to_string(StateKind k) {
    switch (k) {
    case StateKind::start: return "start";
    case StateKind::transient: return "transient";
    case StateKind::goal: return "goal";
    }
    return "transient";
}

StateKind state_kind_from_string(std::string_view s) {
    if (s == "start") return StateKind::start;
    if (s == "transient") return StateKind::transient;
    if (s == "goal") return StateKind::goal;
    throw ParseError("unknown state kind '" + std::string(s) + "' (expected start, transient or goal)");
}

std::size_t AttackGraph::state_index(std::string_view id) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].id == id) return i;
    }
    return npos;
}

const VulnerabilityRecord* AttackGraph::find_vulnerability(std::string_view cve_id) const {
    for (const auto& v : vulnerabilities) {
        if (v.cve_id == cve_id) return &v;
    }
    return nullptr;
}

std::size_t AttackGraph::transient_count() const {
    std::size_t n = 0;
    for (const auto& s : states) {
        if (s.kind != StateKind::goal) ++n;
    }
    return n;
}

std::size_t AttackGraph::goal_count() const {
    return states.size() - transient_count();
}

std::vector<std::size_t> AttackGraph::successors(std::size_t i) const {
    std::vector<std::size_t> out;
    const std::string& id = states.at(i).id;
    for (const auto& e : edges) {
        if (e.from == id) {
            const std::size_t j = state_index(e.to);
            if (j != npos) out.push_back(j);
        }
    }
    return out;
}

} // namespace agm
