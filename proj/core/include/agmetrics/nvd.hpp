#pragma once

#include "agmetrics/cvss.hpp"
#include "agmetrics/date.hpp"
#include "agmetrics/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace agm {

enum class CveSource { network, cache, fixture };

std::string to_string(CveSource s);

/// One CVE's recorded CVSS v2 base vector plus the upstream published date.
/// Letter codes are kept as recorded; numeric factors come from cvss lookups.
struct CveLookup {
    std::string cve_id;
    std::string av;
    std::string ac;
    std::string au;
    std::string c;
    std::string i;
    std::string a;
    Date published_date{};
    CveSource source = CveSource::fixture;
};

struct NvdOptions {
    std::optional<std::string> fixtures_dir; // consulted after cache when set
    std::optional<std::string> cache_dir;    // defaults to the per-user cache dir
    bool offline = true;                     // network is opt-in; tests stay hermetic
    std::string api_base;                    // empty -> NVD_API_BASE env or the public v2 endpoint
    std::optional<std::string> api_key;      // unset -> NVD_API_KEY env if present
    std::int64_t min_request_interval_ms = 2000;
};

/// $XDG_CACHE_HOME/agmetrics/nvd, falling back to ~/.cache/agmetrics/nvd.
std::string default_cache_dir();

bool valid_cve_id(const std::string& id);

/// Cache, then fixtures, then (online only) the network; a network hit is
/// persisted to the cache before returning. Throws ParseError for a bad id or
/// malformed fixture, NotFoundError when the id resolves nowhere, and
/// NetworkError for transport-level failures (retryable, distinct from
/// not-found).
CveLookup fetch_cvss(const std::string& cve_id, const NvdOptions& options);

cvss::ExploitabilityScore lookup_exploitability(const CveLookup& lookup);
cvss::ImpactScore lookup_impact(const CveLookup& lookup);

/// Fills unset factor fields and missing disclosure dates from lookups.
/// Explicit fields and overrides are never touched, so hydrating a complete
/// graph is the identity and hydrating twice equals hydrating once. A record
/// that resolves nowhere and cannot compute exploitability on its own is an
/// error naming every such CVE.
AttackGraph hydrate_graph(const AttackGraph& g, const NvdOptions& options);

} // namespace agm
