#pragma once

#include "agmetrics/types.hpp"

#include <filesystem>
#include <span>
#include <string_view>

namespace agm::fixtures {

/// Six-vulnerability demo lattice modeled on a small enterprise testbed:
/// a web tier (Apache) opens paths through either the database (PostgreSQL,
/// then RADIUS) or a workstation chain (Office, local kernel escalation),
/// all converging on the management controller goal. Scores and disclosure
/// dates follow the published advisories for the referenced CVEs.
std::string_view demo_graph_json();

/// Same lattice with the RADIUS host promoted to a second absorbing goal.
std::string_view two_goal_graph_json();

AttackGraph demo_graph();
AttackGraph two_goal_graph();

struct NvdFixtureDoc {
    std::string_view cve_id;
    std::string_view body;
};

/// Recorded upstream CVSS v2 documents for every CVE in the demo lattice.
std::span<const NvdFixtureDoc> nvd_documents();

/// Materializes demo.json, demo_two_goal.json, and nvd_fixtures/<id>.json
/// under dir. Used by the demo command and by tests that want an on-disk tree.
void write_demo_tree(const std::filesystem::path& dir);

} // namespace agm::fixtures
