#pragma once

#include "agmetrics/types.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace agm {

enum class DiagCode {
    no_start_state,
    multiple_start_states,
    no_goal_state,
    start_has_cve,
    missing_cve,
    unresolved_cve,
    duplicate_state,
    duplicate_vulnerability,
    edge_from_goal,
    edge_into_start,
    edge_unknown_state,
    self_loop,
    parallel_edge,
    dead_end_state,
    goal_unreachable,
    disclosure_after_scoring,
    bad_factor_value,
};

std::string_view to_string(DiagCode c);

struct Diagnostic {
    DiagCode code;
    std::string message;
};

/// Structural validation of an in-memory graph. Returns one diagnostic per
/// violated invariant; an empty result means the graph satisfies every
/// absorbing-chain precondition and is safe for the engine.
std::vector<Diagnostic> validate_graph(const AttackGraph& g);

struct ParseOptions {
    bool lenient = false;  // tolerate unknown keys instead of erroring
    bool validate = true;  // run validate_graph and throw on any diagnostic
};

/// Parses the UTF-8 JSON graph document. States come out in canonical order
/// (start first, transients in file order, goals last). Throws ParseError on
/// syntax errors, unknown fields (strict mode), duplicate ids, dangling CVE
/// references, malformed dates, and — unless options.validate is off — any
/// structural diagnostic.
AttackGraph parse_graph(std::string_view json_text, const ParseOptions& options = {});

/// Reads and parses a graph file. Throws IoError when the path is unreadable.
AttackGraph load_graph(const std::filesystem::path& path, const ParseOptions& options = {});

/// Serializes back to the graph file format. parse(serialize(g)) reproduces g
/// structurally, including state order.
std::string serialize_graph(const AttackGraph& g);

} // namespace agm
