#pragma once

#include "agmetrics/date.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agm {

/// One CVE entry: CVSS v2 base factors (decimal values, optional as a group),
/// disclosure date, and the optional overrides accepted by the graph file.
/// The exploitability override stands in for the factor triple when only a
/// published subscore is known; the impact override does the same for rewards.
struct VulnerabilityRecord {
    std::string cve_id;
    std::optional<double> access_vector;     // AV in (0,1]
    std::optional<double> access_complexity; // AC in (0,1]
    std::optional<double> authentication;    // Au in (0,1]
    std::optional<double> conf_impact;       // C in [0,1)
    std::optional<double> integ_impact;      // I in [0,1)
    std::optional<double> avail_impact;      // A in [0,1)
    Date disclosure_date{};
    std::optional<double> exploitability_override; // in (0,10]
    std::optional<double> impact_override;         // in [0,10.41]

    bool has_factor_triple() const {
        return access_vector && access_complexity && authentication;
    }
    bool has_impact_factors() const {
        return conf_impact && integ_impact && avail_impact;
    }
};

enum class StateKind { start, transient, goal };

std::string_view to_string(StateKind k);
StateKind state_kind_from_string(std::string_view s); // throws ParseError

/// A node of the attack graph. Transient and goal states reference the
/// vulnerability exploited to occupy them; the start state is the attacker's
/// initial foothold and carries none.
struct AttackState {
    std::string id;
    StateKind kind = StateKind::transient;
    std::optional<std::string> cve;
    std::optional<std::string> host;
};

struct Edge {
    std::string from;
    std::string to;
};

/// Parsed attack graph. States are held in canonical order: the start state
/// first, transient states in file order, goal states last. That ordering is
/// what makes the (Q,R) partition of the transition matrix positional.
struct AttackGraph {
    std::string name;
    Date scoring_date{};
    std::vector<AttackState> states;
    std::vector<Edge> edges;
    std::vector<VulnerabilityRecord> vulnerabilities;

    /// Index of a state id in canonical order, or npos when absent.
    std::size_t state_index(std::string_view id) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const VulnerabilityRecord* find_vulnerability(std::string_view cve_id) const;

    std::size_t transient_count() const; // includes the start state
    std::size_t goal_count() const;

    /// Successor state indices of state i, in canonical order.
    std::vector<std::size_t> successors(std::size_t i) const;
};

} // namespace agm
