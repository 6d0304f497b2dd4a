#include "agmetrics/fixtures.hpp"

#include "agmetrics/errors.hpp"
#include "agmetrics/graph_io.hpp"

#include <array>
#include <fstream>

namespace agm::fixtures {

namespace {

// Kept in the serializer's own formatting so parse -> serialize round-trips
// to these exact bytes (covered by a test).
constexpr std::string_view kDemoGraph = R"({
  "name": "demo",
  "scoring_date": "2014-04-16",
  "states": [
    {
      "id": "start",
      "kind": "start"
    },
    {
      "id": "s_apache",
      "kind": "transient",
      "cve": "CVE-2014-0098",
      "host": "web"
    },
    {
      "id": "s_postgres",
      "kind": "transient",
      "cve": "CVE-2014-0063",
      "host": "db"
    },
    {
      "id": "s_office",
      "kind": "transient",
      "cve": "CVE-2013-1324",
      "host": "workstation"
    },
    {
      "id": "s_linux",
      "kind": "transient",
      "cve": "CVE-2014-0038",
      "host": "workstation"
    },
    {
      "id": "s_radius",
      "kind": "transient",
      "cve": "CVE-2014-1878",
      "host": "auth"
    },
    {
      "id": "s_bmc",
      "kind": "goal",
      "cve": "CVE-2013-4782",
      "host": "mgmt"
    }
  ],
  "edges": [
    {
      "from": "start",
      "to": "s_apache"
    },
    {
      "from": "s_apache",
      "to": "s_postgres"
    },
    {
      "from": "s_apache",
      "to": "s_office"
    },
    {
      "from": "s_postgres",
      "to": "s_radius"
    },
    {
      "from": "s_postgres",
      "to": "s_bmc"
    },
    {
      "from": "s_office",
      "to": "s_linux"
    },
    {
      "from": "s_linux",
      "to": "s_radius"
    },
    {
      "from": "s_linux",
      "to": "s_bmc"
    },
    {
      "from": "s_radius",
      "to": "s_bmc"
    }
  ],
  "vulnerabilities": [
    {
      "cve": "CVE-2014-0098",
      "disclosure_date": "2014-03-18",
      "av": "N",
      "ac": "L",
      "au": "N",
      "c": "N",
      "i": "N",
      "a": "P"
    },
    {
      "cve": "CVE-2014-0063",
      "disclosure_date": "2014-02-17",
      "av": "N",
      "ac": "M",
      "au": "S",
      "c": "P",
      "i": "P",
      "a": "P",
      "exploitability_override": 7.9
    },
    {
      "cve": "CVE-2013-1324",
      "disclosure_date": "2013-11-13",
      "av": "N",
      "ac": "M",
      "au": "N",
      "c": "C",
      "i": "C",
      "a": "C"
    },
    {
      "cve": "CVE-2014-0038",
      "disclosure_date": "2014-02-06",
      "av": "L",
      "ac": "M",
      "au": "N",
      "c": "C",
      "i": "C",
      "a": "C"
    },
    {
      "cve": "CVE-2014-1878",
      "disclosure_date": "2014-02-28",
      "av": "N",
      "ac": "L",
      "au": "N",
      "c": "P",
      "i": "P",
      "a": "P"
    },
    {
      "cve": "CVE-2013-4782",
      "disclosure_date": "2013-07-08",
      "av": "N",
      "ac": "L",
      "au": "N",
      "c": "C",
      "i": "C",
      "a": "C"
    }
  ]
}
)";

constexpr std::string_view kTwoGoalGraph = R"({
  "name": "demo-two-goal",
  "scoring_date": "2014-04-16",
  "states": [
    {
      "id": "start",
      "kind": "start"
    },
    {
      "id": "s_apache",
      "kind": "transient",
      "cve": "CVE-2014-0098",
      "host": "web"
    },
    {
      "id": "s_postgres",
      "kind": "transient",
      "cve": "CVE-2014-0063",
      "host": "db"
    },
    {
      "id": "s_office",
      "kind": "transient",
      "cve": "CVE-2013-1324",
      "host": "workstation"
    },
    {
      "id": "s_linux",
      "kind": "transient",
      "cve": "CVE-2014-0038",
      "host": "workstation"
    },
    {
      "id": "s_radius",
      "kind": "goal",
      "cve": "CVE-2014-1878",
      "host": "auth"
    },
    {
      "id": "s_bmc",
      "kind": "goal",
      "cve": "CVE-2013-4782",
      "host": "mgmt"
    }
  ],
  "edges": [
    {
      "from": "start",
      "to": "s_apache"
    },
    {
      "from": "s_apache",
      "to": "s_postgres"
    },
    {
      "from": "s_apache",
      "to": "s_office"
    },
    {
      "from": "s_postgres",
      "to": "s_radius"
    },
    {
      "from": "s_postgres",
      "to": "s_bmc"
    },
    {
      "from": "s_office",
      "to": "s_linux"
    },
    {
      "from": "s_linux",
      "to": "s_radius"
    },
    {
      "from": "s_linux",
      "to": "s_bmc"
    }
  ],
  "vulnerabilities": [
    {
      "cve": "CVE-2014-0098",
      "disclosure_date": "2014-03-18",
      "av": "N",
      "ac": "L",
      "au": "N",
      "c": "N",
      "i": "N",
      "a": "P"
    },
    {
      "cve": "CVE-2014-0063",
      "disclosure_date": "2014-02-17",
      "av": "N",
      "ac": "M",
      "au": "S",
      "c": "P",
      "i": "P",
      "a": "P",
      "exploitability_override": 7.9
    },
    {
      "cve": "CVE-2013-1324",
      "disclosure_date": "2013-11-13",
      "av": "N",
      "ac": "M",
      "au": "N",
      "c": "C",
      "i": "C",
      "a": "C"
    },
    {
      "cve": "CVE-2014-0038",
      "disclosure_date": "2014-02-06",
      "av": "L",
      "ac": "M",
      "au": "N",
      "c": "C",
      "i": "C",
      "a": "C"
    },
    {
      "cve": "CVE-2014-1878",
      "disclosure_date": "2014-02-28",
      "av": "N",
      "ac": "L",
      "au": "N",
      "c": "P",
      "i": "P",
      "a": "P"
    },
    {
      "cve": "CVE-2013-4782",
      "disclosure_date": "2013-07-08",
      "av": "N",
      "ac": "L",
      "au": "N",
      "c": "C",
      "i": "C",
      "a": "C"
    }
  ]
}
)";

constexpr std::string_view kDoc0098 = R"({
  "schema_version": 1,
  "cve_id": "CVE-2014-0098",
  "av": "N",
  "ac": "L",
  "au": "N",
  "c": "N",
  "i": "N",
  "a": "P",
  "published_date": "2014-03-18"
}
)";

constexpr std::string_view kDoc0063 = R"({
  "schema_version": 1,
  "cve_id": "CVE-2014-0063",
  "av": "N",
  "ac": "M",
  "au": "S",
  "c": "P",
  "i": "P",
  "a": "P",
  "published_date": "2014-02-17"
}
)";

constexpr std::string_view kDoc1324 = R"({
  "schema_version": 1,
  "cve_id": "CVE-2013-1324",
  "av": "N",
  "ac": "M",
  "au": "N",
  "c": "C",
  "i": "C",
  "a": "C",
  "published_date": "2013-11-13"
}
)";

constexpr std::string_view kDoc0038 = R"({
  "schema_version": 1,
  "cve_id": "CVE-2014-0038",
  "av": "L",
  "ac": "M",
  "au": "N",
  "c": "C",
  "i": "C",
  "a": "C",
  "published_date": "2014-02-06"
}
)";

constexpr std::string_view kDoc1878 = R"({
  "schema_version": 1,
  "cve_id": "CVE-2014-1878",
  "av": "N",
  "ac": "L",
  "au": "N",
  "c": "P",
  "i": "P",
  "a": "P",
  "published_date": "2014-02-28"
}
)";

constexpr std::string_view kDoc4782 = R"({
  "schema_version": 1,
  "cve_id": "CVE-2013-4782",
  "av": "N",
  "ac": "L",
  "au": "N",
  "c": "C",
  "i": "C",
  "a": "C",
  "published_date": "2013-07-08"
}
)";

constexpr std::array<NvdFixtureDoc, 6> kNvdDocs{{
    {"CVE-2014-0098", kDoc0098},
    {"CVE-2014-0063", kDoc0063},
    {"CVE-2013-1324", kDoc1324},
    {"CVE-2014-0038", kDoc0038},
    {"CVE-2014-1878", kDoc1878},
    {"CVE-2013-4782", kDoc4782},
}};

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("short write to " + path.string());
}

} // namespace

std::string_view demo_graph_json() { return kDemoGraph; }
std::string_view two_goal_graph_json() { return kTwoGoalGraph; }

AttackGraph demo_graph() { return parse_graph(kDemoGraph); }
AttackGraph two_goal_graph() { return parse_graph(kTwoGoalGraph); }

std::span<const NvdFixtureDoc> nvd_documents() { return kNvdDocs; }

void write_demo_tree(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir / "nvd_fixtures", ec);
    if (ec) throw IoError("cannot create " + (dir / "nvd_fixtures").string() + ": " + ec.message());
    write_text(dir / "demo.json", kDemoGraph);
    write_text(dir / "demo_two_goal.json", kTwoGoalGraph);
    for (const NvdFixtureDoc& doc : kNvdDocs) {
        write_text(dir / "nvd_fixtures" / (std::string(doc.cve_id) + ".json"), doc.body);
    }
}

} // namespace agm::fixtures
