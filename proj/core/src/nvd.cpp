#include "agmetrics/nvd.hpp"

#include "agmetrics/errors.hpp"
#include "agmetrics/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include <httplib.h> // CPPHTTPLIB_OPENSSL_SUPPORT comes from the build when TLS is available

namespace agm {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string to_string(CveSource s) {
    switch (s) {
    case CveSource::network: return "network";
    case CveSource::cache: return "cache";
    case CveSource::fixture: return "fixture";
    }
    return "?";
}

std::string default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        return std::string(xdg) + "/agmetrics/nvd";
    }
    if (const char* home = std::getenv("HOME"); home && *home) {
        return std::string(home) + "/.cache/agmetrics/nvd";
    }
    return ".agmetrics-cache/nvd";
}

bool valid_cve_id(const std::string& id) {
    static const std::regex pattern("^CVE-[0-9]{4}-[0-9]{4,}$");
    return std::regex_match(id, pattern);
}

namespace {

constexpr int kDocumentSchemaVersion = 1;
constexpr const char* kDefaultApiBase = "https://services.nvd.nist.gov/rest/json/cves/2.0";

std::string doc_string(const json& doc, const char* key, const std::string& where) {
    auto it = doc.find(key);
    if (it == doc.end() || !it->is_string()) {
        throw ParseError("CVE document " + where + " is missing string field '" + key + "'");
    }
    return it->get<std::string>();
}

// Per-CVE documents in the cache and fixture directories share one schema.
CveLookup parse_document(const std::string& text, const std::string& expected_id,
                         const std::string& where, CveSource source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("CVE document " + where + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ParseError("CVE document " + where + " must be an object");
    auto sv = doc.find("schema_version");
    if (sv == doc.end() || !sv->is_number_integer() || sv->get<int>() != kDocumentSchemaVersion) {
        throw ParseError("CVE document " + where + " has an unsupported schema_version");
    }

    CveLookup lookup;
    lookup.cve_id = doc_string(doc, "cve_id", where);
    if (lookup.cve_id != expected_id) {
        throw ParseError("CVE document " + where + " is for '" + lookup.cve_id + "', expected '" +
                         expected_id + "'");
    }
    lookup.av = doc_string(doc, "av", where);
    lookup.ac = doc_string(doc, "ac", where);
    lookup.au = doc_string(doc, "au", where);
    lookup.c = doc_string(doc, "c", where);
    lookup.i = doc_string(doc, "i", where);
    lookup.a = doc_string(doc, "a", where);
    // Conversion throws on codes outside the v2 enumerations.
    cvss::av_value(lookup.av);
    cvss::ac_value(lookup.ac);
    cvss::au_value(lookup.au);
    cvss::cia_value(lookup.c);
    cvss::cia_value(lookup.i);
    cvss::cia_value(lookup.a);
    lookup.published_date = parse_date(doc_string(doc, "published_date", where));
    lookup.source = source;
    return lookup;
}

std::string serialize_document(const CveLookup& lookup) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kDocumentSchemaVersion;
    doc["cve_id"] = lookup.cve_id;
    doc["av"] = lookup.av;
    doc["ac"] = lookup.ac;
    doc["au"] = lookup.au;
    doc["c"] = lookup.c;
    doc["i"] = lookup.i;
    doc["a"] = lookup.a;
    doc["published_date"] = format_date(lookup.published_date);
    return doc.dump(2) + "\n";
}

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_cache_document(const fs::path& dir, const CveLookup& lookup) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create cache directory " + dir.string() + ": " + ec.message());
    const fs::path final_path = dir / (lookup.cve_id + ".json");
    const fs::path tmp_path = dir / (lookup.cve_id + ".json.tmp");
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write cache file " + tmp_path.string());
        out << serialize_document(lookup);
        if (!out) throw IoError("short write to cache file " + tmp_path.string());
    }
    fs::rename(tmp_path, final_path, ec); // atomic within one directory
    if (ec) throw IoError("cannot finalize cache file " + final_path.string() + ": " + ec.message());
}

std::string map_code(const json& data, const char* key,
                     std::initializer_list<std::pair<const char*, const char*>> table,
                     const std::string& cve_id) {
    auto it = data.find(key);
    if (it == data.end() || !it->is_string()) {
        throw ParseError("upstream payload for " + cve_id + " lacks '" + key + "'");
    }
    const std::string value = it->get<std::string>();
    for (const auto& [name, code] : table) {
        if (value == name) return code;
    }
    throw ParseError("upstream payload for " + cve_id + " has unknown " + key + " '" + value + "'");
}

CveLookup parse_nvd_payload(const std::string& body, const std::string& cve_id) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::exception& e) {
        throw ParseError("malformed upstream payload for " + cve_id + ": " + e.what());
    }
    const auto vulns = doc.find("vulnerabilities");
    if (vulns == doc.end() || !vulns->is_array()) {
        throw ParseError("malformed upstream payload for " + cve_id + ": no vulnerabilities array");
    }
    if (vulns->empty()) throw NotFoundError("CVE " + cve_id + " not known to the upstream service");
    const json& cve = (*vulns)[0].value("cve", json::object());
    if (cve.value("id", "") != cve_id) {
        throw ParseError("upstream payload is for '" + cve.value("id", "") + "', expected '" +
                         cve_id + "'");
    }

    const json& metrics = cve.value("metrics", json::object());
    const auto v2 = metrics.find("cvssMetricV2");
    if (v2 == metrics.end() || !v2->is_array() || v2->empty()) {
        throw ParseError("no CVSS v2 metrics in upstream payload for " + cve_id);
    }
    const json& data = (*v2)[0].value("cvssData", json::object());

    CveLookup lookup;
    lookup.cve_id = cve_id;
    lookup.av = map_code(data, "accessVector",
                         {{"LOCAL", "L"}, {"ADJACENT_NETWORK", "A"}, {"NETWORK", "N"}}, cve_id);
    lookup.ac = map_code(data, "accessComplexity", {{"HIGH", "H"}, {"MEDIUM", "M"}, {"LOW", "L"}},
                         cve_id);
    lookup.au = map_code(data, "authentication", {{"MULTIPLE", "M"}, {"SINGLE", "S"}, {"NONE", "N"}},
                         cve_id);
    const std::initializer_list<std::pair<const char*, const char*>> cia = {
        {"NONE", "N"}, {"PARTIAL", "P"}, {"COMPLETE", "C"}};
    lookup.c = map_code(data, "confidentialityImpact", cia, cve_id);
    lookup.i = map_code(data, "integrityImpact", cia, cve_id);
    lookup.a = map_code(data, "availabilityImpact", cia, cve_id);

    const std::string published = cve.value("published", "");
    if (published.size() < 10) {
        throw ParseError("upstream payload for " + cve_id + " lacks a usable published date");
    }
    lookup.published_date = parse_date(published.substr(0, 10));
    lookup.source = CveSource::network;
    return lookup;
}

// Serializes requests so consecutive network calls honor the rate ceiling.
void rate_limit(std::int64_t min_interval_ms) {
    static std::mutex gate;
    static std::chrono::steady_clock::time_point last{};
    std::lock_guard<std::mutex> lock(gate);
    const auto now = std::chrono::steady_clock::now();
    if (last.time_since_epoch().count() != 0) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(now - last);
        if (elapsed.count() < min_interval_ms) {
            std::this_thread::sleep_for(std::chrono::milliseconds(min_interval_ms) - elapsed);
        }
    }
    last = std::chrono::steady_clock::now();
}

CveLookup fetch_from_network(const std::string& cve_id, const NvdOptions& options) {
    std::string base = options.api_base;
    if (base.empty()) {
        if (const char* env = std::getenv("NVD_API_BASE"); env && *env) base = env;
        else base = kDefaultApiBase;
    }
    const auto scheme_end = base.find("://");
    if (scheme_end == std::string::npos) {
        throw ParseError("API base '" + base + "' has no scheme");
    }
    const auto path_start = base.find('/', scheme_end + 3);
    const std::string origin = path_start == std::string::npos ? base : base.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : base.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (base.rfind("https://", 0) == 0) {
        throw NetworkError("TLS support not built in; set NVD_API_BASE to an http endpoint");
    }
#endif

    std::optional<std::string> key = options.api_key;
    if (!key) {
        if (const char* env = std::getenv("NVD_API_KEY"); env && *env) key = env;
    }
    httplib::Headers headers{{"User-Agent", "agmetrics/" + std::string(kVersion)}};
    if (key) headers.emplace("apiKey", *key);

    rate_limit(options.min_request_interval_ms);

    httplib::Client client(origin);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    auto res = client.Get(path + "?cveId=" + cve_id, headers);
    if (!res) {
        throw NetworkError("request to " + origin + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status == 404) throw NotFoundError("CVE " + cve_id + " not known to the upstream service");
    if (res->status != 200) {
        throw NetworkError("upstream returned status " + std::to_string(res->status) + " for " +
                           cve_id);
    }
    return parse_nvd_payload(res->body, cve_id);
}

} // namespace

CveLookup fetch_cvss(const std::string& cve_id, const NvdOptions& options) {
    if (!valid_cve_id(cve_id)) {
        throw ParseError("malformed CVE id '" + cve_id + "' (expected CVE-YYYY-NNNN...)");
    }

    const fs::path cache_dir = options.cache_dir.value_or(default_cache_dir());
    const fs::path cache_path = cache_dir / (cve_id + ".json");
    if (auto text = read_file(cache_path)) {
        try {
            return parse_document(*text, cve_id, cache_path.string(), CveSource::cache);
        } catch (const ParseError&) {
            // A stale or corrupt cache entry behaves as a miss and is rewritten.
        }
    }

    if (options.fixtures_dir) {
        const fs::path fixture_path = fs::path(*options.fixtures_dir) / (cve_id + ".json");
        if (auto text = read_file(fixture_path)) {
            return parse_document(*text, cve_id, fixture_path.string(), CveSource::fixture);
        }
    }

    if (options.offline) {
        throw NotFoundError("CVE " + cve_id + " not found in cache or fixtures (offline mode)");
    }

    CveLookup lookup = fetch_from_network(cve_id, options);
    write_cache_document(cache_dir, lookup);
    return lookup;
}

cvss::ExploitabilityScore lookup_exploitability(const CveLookup& lookup) {
    return cvss::base_exploitability(cvss::av_value(lookup.av), cvss::ac_value(lookup.ac),
                                     cvss::au_value(lookup.au));
}

cvss::ImpactScore lookup_impact(const CveLookup& lookup) {
    return cvss::impact_score(cvss::cia_value(lookup.c), cvss::cia_value(lookup.i),
                              cvss::cia_value(lookup.a));
}

AttackGraph hydrate_graph(const AttackGraph& g, const NvdOptions& options) {
    AttackGraph out = g;
    std::vector<std::string> unresolved;
    for (VulnerabilityRecord& v : out.vulnerabilities) {
        const bool complete = v.access_vector && v.access_complexity && v.authentication &&
                              v.conf_impact && v.integ_impact && v.avail_impact;
        if (complete) continue;
        CveLookup lookup;
        try {
            lookup = fetch_cvss(v.cve_id, options);
        } catch (const NotFoundError&) {
            // Tolerable only when the record can still price its own edges.
            if (!v.exploitability_override && !v.has_factor_triple()) unresolved.push_back(v.cve_id);
            continue;
        }
        if (!v.access_vector) v.access_vector = cvss::av_value(lookup.av);
        if (!v.access_complexity) v.access_complexity = cvss::ac_value(lookup.ac);
        if (!v.authentication) v.authentication = cvss::au_value(lookup.au);
        if (!v.conf_impact) v.conf_impact = cvss::cia_value(lookup.c);
        if (!v.integ_impact) v.integ_impact = cvss::cia_value(lookup.i);
        if (!v.avail_impact) v.avail_impact = cvss::cia_value(lookup.a);
        // disclosure_date stays as the graph file gave it: the lifecycle model
        // is defined against advisory disclosure, which the upstream published
        // date only approximates.
    }
    if (!unresolved.empty()) {
        std::string msg = "unresolved CVEs with no factors or override:";
        for (const std::string& id : unresolved) msg += " " + id;
        throw NotFoundError(msg);
    }
    return out;
}

} // namespace agm
