#include "agmetrics/graph_io.hpp"

#include "agmetrics/cvss.hpp"
#include "agmetrics/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

using nlohmann::json;
using nlohmann::ordered_json;

namespace agm {
namespace {

int kind_rank(StateKind k) {
    switch (k) {
    case StateKind::start: return 0;
    case StateKind::transient: return 1;
    case StateKind::goal: return 2;
    }
    return 1;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where, bool lenient) {
    if (lenient) return;
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            throw ParseError("unknown field '" + key + "' in " + where);
        }
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing field '" + std::string(key) + "' in " + where);
    }
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require_field(obj, key, where);
    if (!v.is_string()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be a string");
    }
    return v.get<std::string>();
}

double require_number(const json& v, const char* key, const std::string& where) {
    if (!v.is_number()) {
        throw ParseError("field '" + std::string(key) + "' in " + where + " must be a number");
    }
    return v.get<double>();
}

VulnerabilityRecord parse_vulnerability(const json& obj, bool lenient) {
    if (!obj.is_object()) throw ParseError("vulnerability entry must be an object");
    const std::string where = "vulnerability '" + (obj.contains("cve") && obj["cve"].is_string()
                                                       ? obj["cve"].get<std::string>()
                                                       : std::string("<unnamed>")) + "'";
    reject_unknown_keys(obj,
                        {"cve", "disclosure_date", "av", "ac", "au", "c", "i", "a",
                         "exploitability_override", "impact_override"},
                        where, lenient);

    VulnerabilityRecord v;
    v.cve_id = require_string(obj, "cve", where);
    v.disclosure_date = parse_date(require_string(obj, "disclosure_date", where));

    auto letter = [&](const char* key) -> std::optional<std::string> {
        auto it = obj.find(key);
        if (it == obj.end()) return std::nullopt;
        if (!it->is_string()) {
            throw ParseError("field '" + std::string(key) + "' in " + where + " must be a letter code");
        }
        return it->get<std::string>();
    };
    if (auto s = letter("av")) v.access_vector = cvss::av_value(*s);
    if (auto s = letter("ac")) v.access_complexity = cvss::ac_value(*s);
    if (auto s = letter("au")) v.authentication = cvss::au_value(*s);
    if (auto s = letter("c")) v.conf_impact = cvss::cia_value(*s);
    if (auto s = letter("i")) v.integ_impact = cvss::cia_value(*s);
    if (auto s = letter("a")) v.avail_impact = cvss::cia_value(*s);

    if (auto it = obj.find("exploitability_override"); it != obj.end()) {
        const double x = require_number(*it, "exploitability_override", where);
        if (!(x > 0.0 && x <= 10.0)) {
            throw ParseError("exploitability_override in " + where + " must be in (0,10]");
        }
        v.exploitability_override = x;
    }
    if (auto it = obj.find("impact_override"); it != obj.end()) {
        const double x = require_number(*it, "impact_override", where);
        if (!(x >= 0.0 && x <= 10.41)) {
            throw ParseError("impact_override in " + where + " must be in [0,10.41]");
        }
        v.impact_override = x;
    }
    return v;
}

} // namespace

std::string_view to_string(DiagCode c) {
    switch (c) {
    case DiagCode::no_start_state: return "no_start_state";
    case DiagCode::multiple_start_states: return "multiple_start_states";
    case DiagCode::no_goal_state: return "no_goal_state";
    case DiagCode::start_has_cve: return "start_has_cve";
    case DiagCode::missing_cve: return "missing_cve";
    case DiagCode::unresolved_cve: return "unresolved_cve";
    case DiagCode::duplicate_state: return "duplicate_state";
    case DiagCode::duplicate_vulnerability: return "duplicate_vulnerability";
    case DiagCode::edge_from_goal: return "edge_from_goal";
    case DiagCode::edge_into_start: return "edge_into_start";
    case DiagCode::edge_unknown_state: return "edge_unknown_state";
    case DiagCode::self_loop: return "self_loop";
    case DiagCode::parallel_edge: return "parallel_edge";
    case DiagCode::dead_end_state: return "dead_end_state";
    case DiagCode::goal_unreachable: return "goal_unreachable";
    case DiagCode::disclosure_after_scoring: return "disclosure_after_scoring";
    case DiagCode::bad_factor_value: return "bad_factor_value";
    }
    return "unknown";
}

std::vector<Diagnostic> validate_graph(const AttackGraph& g) {
    std::vector<Diagnostic> out;
    auto diag = [&](DiagCode code, std::string msg) { out.push_back({code, std::move(msg)}); };

    std::size_t starts = 0, goals = 0;
    std::unordered_set<std::string> seen_ids;
    for (const auto& s : g.states) {
        if (!seen_ids.insert(s.id).second) {
            diag(DiagCode::duplicate_state, "duplicate state id '" + s.id + "'");
        }
        if (s.kind == StateKind::start) {
            ++starts;
            if (s.cve) diag(DiagCode::start_has_cve, "start state '" + s.id + "' must not reference a CVE");
        } else {
            if (s.kind == StateKind::goal) ++goals;
            if (!s.cve) {
                diag(DiagCode::missing_cve, "state '" + s.id + "' of kind '" +
                                                std::string(to_string(s.kind)) + "' requires a cve reference");
            } else if (!g.find_vulnerability(*s.cve)) {
                diag(DiagCode::unresolved_cve,
                     "state '" + s.id + "' references unknown vulnerability '" + *s.cve + "'");
            }
        }
    }
    if (starts == 0) diag(DiagCode::no_start_state, "graph has no start state");
    if (starts > 1) diag(DiagCode::multiple_start_states, "graph has more than one start state");
    if (goals == 0) diag(DiagCode::no_goal_state, "graph has no goal state");

    std::unordered_set<std::string> seen_cves;
    for (const auto& v : g.vulnerabilities) {
        if (!seen_cves.insert(v.cve_id).second) {
            diag(DiagCode::duplicate_vulnerability, "duplicate vulnerability entry '" + v.cve_id + "'");
        }
        if (days_between(v.disclosure_date, g.scoring_date) < 0) {
            diag(DiagCode::disclosure_after_scoring,
                 "vulnerability '" + v.cve_id + "' disclosed " + format_date(v.disclosure_date) +
                     ", after the scoring date " + format_date(g.scoring_date));
        }
        if ((v.access_vector && !cvss::is_av_value(*v.access_vector)) ||
            (v.access_complexity && !cvss::is_ac_value(*v.access_complexity)) ||
            (v.authentication && !cvss::is_au_value(*v.authentication)) ||
            (v.conf_impact && !cvss::is_cia_value(*v.conf_impact)) ||
            (v.integ_impact && !cvss::is_cia_value(*v.integ_impact)) ||
            (v.avail_impact && !cvss::is_cia_value(*v.avail_impact))) {
            diag(DiagCode::bad_factor_value,
                 "vulnerability '" + v.cve_id + "' has a factor outside the CVSS v2 enumerations");
        }
        if (v.exploitability_override &&
            !(*v.exploitability_override > 0.0 && *v.exploitability_override <= 10.0)) {
            diag(DiagCode::bad_factor_value,
                 "vulnerability '" + v.cve_id + "' exploitability_override outside (0,10]");
        }
        if (v.impact_override && !(*v.impact_override >= 0.0 && *v.impact_override <= 10.41)) {
            diag(DiagCode::bad_factor_value,
                 "vulnerability '" + v.cve_id + "' impact_override outside [0,10.41]");
        }
    }

    std::set<std::pair<std::string, std::string>> seen_edges;
    for (const auto& e : g.edges) {
        const std::size_t from = g.state_index(e.from);
        const std::size_t to = g.state_index(e.to);
        if (from == AttackGraph::npos || to == AttackGraph::npos) {
            diag(DiagCode::edge_unknown_state,
                 "edge " + e.from + " -> " + e.to + " references an unknown state");
            continue;
        }
        if (!seen_edges.insert({e.from, e.to}).second) {
            diag(DiagCode::parallel_edge, "parallel edge " + e.from + " -> " + e.to);
        }
        if (g.states[from].kind == StateKind::goal) {
            diag(DiagCode::edge_from_goal, "edge from absorbing state '" + e.from + "'");
        } else if (e.from == e.to) {
            diag(DiagCode::self_loop, "self-loop on state '" + e.from + "'");
        }
        if (g.states[to].kind == StateKind::start) {
            diag(DiagCode::edge_into_start, "edge into the start state '" + e.to + "'");
        }
    }

    // Outgoing-edge and goal-reachability checks only make sense per state
    // once edges resolve; run them regardless so dead ends still surface.
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        if (g.states[i].kind == StateKind::goal) continue;
        bool has_out = false;
        for (const auto& e : g.edges) {
            if (e.from == g.states[i].id && e.from != e.to) {
                has_out = true;
                break;
            }
        }
        if (!has_out) {
            const char* label = g.states[i].kind == StateKind::start ? "start" : "transient";
            diag(DiagCode::dead_end_state,
                 std::string("dead-end ") + label + " state '" + g.states[i].id + "'");
        }
    }

    // Reverse reachability from the goal set: every state must reach a goal.
    std::vector<char> reaches(g.states.size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        if (g.states[i].kind == StateKind::goal) {
            reaches[i] = 1;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        for (const auto& e : g.edges) {
            if (e.to != g.states[cur].id) continue;
            const std::size_t from = g.state_index(e.from);
            if (from != AttackGraph::npos && !reaches[from]) {
                reaches[from] = 1;
                stack.push_back(from);
            }
        }
    }
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        if (!reaches[i]) {
            diag(DiagCode::goal_unreachable,
                 "goal unreachable: no path from state '" + g.states[i].id + "' to any goal state");
        }
    }

    return out;
}

AttackGraph parse_graph(std::string_view json_text, const ParseOptions& options) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("graph file syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
    reject_unknown_keys(doc, {"name", "scoring_date", "states", "edges", "vulnerabilities"},
                        "graph document", options.lenient);

    AttackGraph g;
    g.name = require_string(doc, "name", "graph document");
    g.scoring_date = parse_date(require_string(doc, "scoring_date", "graph document"));

    const json& states = require_field(doc, "states", "graph document");
    if (!states.is_array()) throw ParseError("'states' must be an array");
    std::unordered_set<std::string> ids;
    for (const auto& s : states) {
        if (!s.is_object()) throw ParseError("state entry must be an object");
        const std::string where = "state '" + (s.contains("id") && s["id"].is_string()
                                                   ? s["id"].get<std::string>()
                                                   : std::string("<unnamed>")) + "'";
        reject_unknown_keys(s, {"id", "kind", "cve", "host"}, where, options.lenient);
        AttackState st;
        st.id = require_string(s, "id", where);
        st.kind = state_kind_from_string(require_string(s, "kind", where));
        if (auto it = s.find("cve"); it != s.end()) st.cve = it->get<std::string>();
        if (auto it = s.find("host"); it != s.end()) st.host = it->get<std::string>();
        if (!ids.insert(st.id).second) {
            throw ParseError("duplicate state id '" + st.id + "'");
        }
        g.states.push_back(std::move(st));
    }

    const json& edges = require_field(doc, "edges", "graph document");
    if (!edges.is_array()) throw ParseError("'edges' must be an array");
    std::set<std::pair<std::string, std::string>> edge_set;
    for (const auto& e : edges) {
        if (!e.is_object()) throw ParseError("edge entry must be an object");
        reject_unknown_keys(e, {"from", "to"}, "edge entry", options.lenient);
        Edge edge{require_string(e, "from", "edge entry"), require_string(e, "to", "edge entry")};
        if (!ids.count(edge.from) || !ids.count(edge.to)) {
            throw ParseError("edge " + edge.from + " -> " + edge.to + " references an unknown state");
        }
        if (!edge_set.insert({edge.from, edge.to}).second) {
            throw ParseError("parallel edge " + edge.from + " -> " + edge.to);
        }
        g.edges.push_back(std::move(edge));
    }

    const json& vulns = require_field(doc, "vulnerabilities", "graph document");
    if (!vulns.is_array()) throw ParseError("'vulnerabilities' must be an array");
    std::unordered_set<std::string> cves;
    for (const auto& v : vulns) {
        VulnerabilityRecord rec = parse_vulnerability(v, options.lenient);
        if (!cves.insert(rec.cve_id).second) {
            throw ParseError("duplicate vulnerability entry '" + rec.cve_id + "'");
        }
        g.vulnerabilities.push_back(std::move(rec));
    }

    for (const auto& s : g.states) {
        if (s.cve && !cves.count(*s.cve)) {
            throw ParseError("state '" + s.id + "' references unknown vulnerability '" + *s.cve + "'");
        }
    }

    // Canonical ordering: start first, transients in file order, goals last.
    std::stable_sort(g.states.begin(), g.states.end(), [](const AttackState& a, const AttackState& b) {
        return kind_rank(a.kind) < kind_rank(b.kind);
    });

    if (options.validate) {
        const auto diags = validate_graph(g);
        if (!diags.empty()) {
            std::ostringstream msg;
            msg << "invalid attack graph:";
            for (const auto& d : diags) msg << "\n  " << d.message;
            throw ParseError(msg.str());
        }
    }
    return g;
}

AttackGraph load_graph(const std::filesystem::path& path, const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading graph file: " + path.string());
    return parse_graph(buf.str(), options);
}

std::string serialize_graph(const AttackGraph& g) {
    ordered_json doc;
    doc["name"] = g.name;
    doc["scoring_date"] = format_date(g.scoring_date);

    doc["states"] = ordered_json::array();
    for (const auto& s : g.states) {
        ordered_json st;
        st["id"] = s.id;
        st["kind"] = std::string(to_string(s.kind));
        if (s.cve) st["cve"] = *s.cve;
        if (s.host) st["host"] = *s.host;
        doc["states"].push_back(std::move(st));
    }

    doc["edges"] = ordered_json::array();
    for (const auto& e : g.edges) {
        doc["edges"].push_back(ordered_json{{"from", e.from}, {"to", e.to}});
    }

    doc["vulnerabilities"] = ordered_json::array();
    for (const auto& v : g.vulnerabilities) {
        ordered_json jv;
        jv["cve"] = v.cve_id;
        jv["disclosure_date"] = format_date(v.disclosure_date);
        if (v.access_vector) jv["av"] = std::string(cvss::av_code(*v.access_vector));
        if (v.access_complexity) jv["ac"] = std::string(cvss::ac_code(*v.access_complexity));
        if (v.authentication) jv["au"] = std::string(cvss::au_code(*v.authentication));
        if (v.conf_impact) jv["c"] = std::string(cvss::cia_code(*v.conf_impact));
        if (v.integ_impact) jv["i"] = std::string(cvss::cia_code(*v.integ_impact));
        if (v.avail_impact) jv["a"] = std::string(cvss::cia_code(*v.avail_impact));
        if (v.exploitability_override) jv["exploitability_override"] = *v.exploitability_override;
        if (v.impact_override) jv["impact_override"] = *v.impact_override;
        doc["vulnerabilities"].push_back(std::move(jv));
    }

    return doc.dump(2) + "\n";
}

} // namespace agm
