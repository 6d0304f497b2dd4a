// End-to-end checks that exercise the installed command surface: real
// process, real files, real exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path unique_temp_dir(const std::string& tag) {
    static int counter = 0;
    const fs::path p = fs::temp_directory_path() /
                       ("agmetrics_cli_" + tag + "_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(unique_temp_dir(tag)) {}
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: ", p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path base = fs::temp_directory_path() /
                          ("agmetrics_cli_io_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter++));
    const fs::path out_file = base.string() + ".out";
    const fs::path err_file = base.string() + ".err";
    const std::string cmd = std::string(AGMETRICS_CLI_PATH) + " " + args + " >" +
                            out_file.string() + " 2>" + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream out(out_file, std::ios::binary);
    std::ifstream err(err_file, std::ios::binary);
    std::ostringstream ob, eb;
    ob << out.rdbuf();
    eb << err.rdbuf();
    r.out = ob.str();
    r.err = eb.str();
    fs::remove(out_file);
    fs::remove(err_file);
    return r;
}

const std::string kDemoGraph = std::string(AGMETRICS_DATA_DIR) + "/demo.json";
const std::string kFixtures = std::string(AGMETRICS_DATA_DIR) + "/nvd_fixtures";

int data_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    int rows = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true; // column header
            continue;
        }
        ++rows;
    }
    return rows;
}

std::string csv_value(const std::string& csv, const std::string& prefix) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    }
    return "<missing " + prefix + ">";
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("validate: clean graph, broken graph, missing file") {
    CHECK(run_cli("validate " + kDemoGraph).exit_code == 0);

    TempDir dir("validate");
    // drop the radius out-edge: dead end plus unreachable goal path
    json doc = json::parse(slurp(kDemoGraph));
    auto& edges = doc["edges"];
    const auto removed = std::erase_if(
        edges.get_ref<json::array_t&>(),
        [](const json& e) { return e["from"] == "s_radius"; });
    REQUIRE(removed == 1);
    const fs::path broken = dir.path / "broken.json";
    write_text(broken, doc.dump(2) + "\n");
    const RunResult bad = run_cli("validate " + broken.string());
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("dead_end_state") != std::string::npos);
    CHECK(bad.err.find("s_radius") != std::string::npos);

    const RunResult missing = run_cli("validate " + dir.path.string() + "/nope.json");
    CHECK(missing.exit_code == 3);
    CHECK(missing.err.find("nope.json") != std::string::npos);

    const RunResult malformed = run_cli("validate --format yaml " + kDemoGraph);
    CHECK(malformed.exit_code == 2); // rejected by flag validation
}

TEST_CASE("analyze: frozen metrics in both formats") {
    const RunResult csv = run_cli("analyze " + kDemoGraph);
    REQUIRE(csv.exit_code == 0);
    CHECK(csv_value(csv.out, "summary,epl,") == "4.01795901046");
    CHECK(csv_value(csv.out, "summary,pp_h5,") == "1");
    CHECK(csv_value(csv.out, "summary,ei_t5,") == "10.00084536");
    CHECK(csv_value(csv.out, "summary,ei_cum,") == "29.599370489");
    CHECK(csv_value(csv.out, "absorption,s_bmc,") == "1");
    CHECK(csv_value(csv.out, "rank,start,") == "1");
    CHECK(csv_value(csv.out, "weight,CVE-2014-0098,") == "0.921737944834");
    CHECK(csv.out.find("# day_offset=0") != std::string::npos);

    const RunResult js = run_cli("analyze --format json " + kDemoGraph);
    REQUIRE(js.exit_code == 0);
    const json doc = json::parse(js.out);
    CHECK(doc["epl"].get<double>() == doctest::Approx(4.01795901046).epsilon(1e-11));
    CHECK(doc["pp"]["value"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["ei"]["cumulative"].get<double>() == doctest::Approx(29.5993704890).epsilon(1e-11));
    CHECK(doc["absorption"]["s_bmc"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["rank"][0]["state"] == "start");
    CHECK(doc["weights"]["CVE-2014-0098"].get<double>() ==
          doctest::Approx(0.921737944834).epsilon(1e-11));
    CHECK(doc["mode"] == "temporal");

    const RunResult offset = run_cli("analyze --day-offset 150 " + kDemoGraph);
    CHECK(csv_value(offset.out, "summary,epl,") == "4.01974311005");

    const RunResult still = run_cli("analyze --mode static " + kDemoGraph);
    CHECK(csv_value(still.out, "summary,epl,") == "4.02088690505");
    const RunResult still150 = run_cli("analyze --mode static --day-offset 150 " + kDemoGraph);
    CHECK(csv_value(still150.out, "summary,epl,") == "4.02088690505"); // static ignores the clock

    const RunResult dump = run_cli("analyze --dump-matrix " + kDemoGraph);
    CHECK(dump.out.find("# transition matrix") != std::string::npos);
    CHECK(dump.out.find("state,start,s_apache,s_postgres,s_office,s_linux,s_radius,s_bmc") !=
          std::string::npos);
    CHECK(dump.out.find("0.475231861864") != std::string::npos);
}

TEST_CASE("analyze: one-hop toy graph") {
    TempDir dir("toy");
    const fs::path toy = dir.path / "toy.json";
    write_text(toy, R"({
  "name": "one-hop",
  "scoring_date": "2014-04-16",
  "states": [
    {"id": "start", "kind": "start"},
    {"id": "g", "kind": "goal", "cve": "CVE-2020-2001"}
  ],
  "edges": [{"from": "start", "to": "g"}],
  "vulnerabilities": [
    {"cve": "CVE-2020-2001", "disclosure_date": "2014-01-01", "av": "N", "ac": "L", "au": "N",
     "c": "C", "i": "C", "a": "C"}
  ]
})");
    const RunResult r = run_cli("analyze " + toy.string());
    REQUIRE(r.exit_code == 0);
    CHECK(csv_value(r.out, "summary,epl,") == "1");
    CHECK(csv_value(r.out, "summary,ei_t5,") == "10.00084536");
    CHECK(csv_value(r.out, "rank,start,") == "1");
    CHECK(csv_value(r.out, "absorption,g,") == "1");
}

TEST_CASE("forecast: series files, determinism, crossings") {
    TempDir dir("forecast");
    const std::string base = "forecast --out-dir " + dir.path.string() + " " + kDemoGraph;
    REQUIRE(run_cli(base).exit_code == 0);
    const std::string first = slurp(dir.path / "forecast.csv");
    CHECK(data_rows(first) == 151);
    CHECK(first.find("day,epl,pp_h5,absorb_s_bmc,ei_t5,ei_cum,w_CVE-2014-0098") !=
          std::string::npos);
    CHECK(first.find("\n0,4.01795901,") != std::string::npos);
    CHECK(first.find("\n150,4.01974311,") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.path / "crossings.csv")); // no thresholds requested

    REQUIRE(run_cli(base).exit_code == 0);
    CHECK(slurp(dir.path / "forecast.csv") == first); // byte-stable across runs

    // EPL stays above 4.0 for the whole horizon: the crossing reports none
    REQUIRE(run_cli(base + " --threshold-epl 4.0").exit_code == 0);
    CHECK(slurp(dir.path / "crossings.csv").find("epl,4,falls_below,none") != std::string::npos);

    // a threshold above the whole series is crossed immediately
    REQUIRE(run_cli(base + " --threshold-epl 4.86 --threshold-pp 0.5").exit_code == 0);
    const std::string crossings = slurp(dir.path / "crossings.csv");
    CHECK(crossings.find("epl,4.86,falls_below,0") != std::string::npos);
    CHECK(crossings.find("pp,0.5,rises_above,0") != std::string::npos);

    TempDir jdir("forecastjson");
    REQUIRE(run_cli("forecast --format json --horizon 3 --out-dir " + jdir.path.string() + " " +
                    kDemoGraph)
                .exit_code == 0);
    const json doc = json::parse(slurp(jdir.path / "forecast.json"));
    REQUIRE(doc["rows"].size() == 4);
    CHECK(doc["rows"][0]["day"] == 0);
    CHECK(doc["rows"][0]["epl"].get<double>() == doctest::Approx(4.01795901046).epsilon(1e-11));
    CHECK(doc["rows"][3]["day"] == 3);

    const RunResult bad = run_cli("forecast --horizon -1 --out-dir " + dir.path.string() + " " +
                                  kDemoGraph);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("simulate: conservation, seeding, shapes") {
    TempDir dir("simulate");
    const std::string base = "simulate --out-dir " + dir.path.string() + " " + kDemoGraph;
    REQUIRE(run_cli("--seed 42 " + base).exit_code == 0);
    const std::string hist = slurp(dir.path / "histogram.csv");
    const std::string visits = slurp(dir.path / "visits.csv");
    CHECK(hist.find("# seed=42") != std::string::npos);
    CHECK(hist.find("# runs=2000") != std::string::npos);
    CHECK(hist.find("# rng=splitmix64+mt19937_64") != std::string::npos);

    long total = 0;
    {
        std::istringstream in(hist);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("day,", 0) == 0) continue;
            const auto a = line.find(','), b = line.rfind(',');
            REQUIRE(a != std::string::npos);
            total += std::stol(line.substr(b + 1));
            const std::string length = line.substr(a + 1, b - a - 1);
            if (length != "truncated") {
                CHECK(std::stol(length) >= 3);
                CHECK(std::stol(length) <= 5);
            }
        }
    }
    CHECK(total == 2000);
    CHECK(visits.find("0,start,2000") != std::string::npos);
    CHECK(visits.find("0,s_bmc,2000") != std::string::npos);

    REQUIRE(run_cli("--seed 42 " + base).exit_code == 0);
    CHECK(slurp(dir.path / "histogram.csv") == hist); // same seed, same bytes
    CHECK(slurp(dir.path / "visits.csv") == visits);

    REQUIRE(run_cli("--seed 7 " + base).exit_code == 0);
    CHECK(slurp(dir.path / "histogram.csv") != hist);

    REQUIRE(run_cli("--seed 42 " + base + " --runs 1 --day-offsets 0,30").exit_code == 0);
    const std::string single = slurp(dir.path / "visits.csv");
    CHECK(single.find("0,start,1") != std::string::npos);
    CHECK(single.find("30,start,1") != std::string::npos);

    CHECK(run_cli(base + " --runs -5").exit_code == 2);
    CHECK(run_cli(base + " --day-offsets 5,3").exit_code == 2);
}

TEST_CASE("fetch-cvss: fixtures, bad ids, offline misses") {
    TempDir cache("fetchcache");
    const std::string flags =
        "--fixtures " + kFixtures + " --cache-dir " + cache.path.string() + " ";

    const RunResult hit = run_cli(flags + "fetch-cvss CVE-2014-0098");
    REQUIRE(hit.exit_code == 0);
    CHECK(hit.out.find("cve,av,ac,au,c,i,a,published,source,exploitability,exploitability_rounded") !=
          std::string::npos);
    CHECK(hit.out.find("CVE-2014-0098,N,L,N,N,N,P,2014-03-18,fixture,9.9968,10.0") !=
          std::string::npos);

    const RunResult multi = run_cli(flags + "fetch-cvss CVE-2014-0038 CVE-2013-4782");
    REQUIRE(multi.exit_code == 0);
    CHECK(multi.out.find("CVE-2014-0038,L,M,N,C,C,C,2014-02-06,fixture,3.392576,3.4") !=
          std::string::npos);
    CHECK(multi.out.find("CVE-2013-4782,N,L,N,C,C,C,2013-07-08,fixture,9.9968,10.0") !=
          std::string::npos);

    CHECK(run_cli(flags + "fetch-cvss CVE-14-9").exit_code == 2);
    const RunResult miss = run_cli(flags + "fetch-cvss CVE-1999-9999");
    CHECK(miss.exit_code == 4);
    CHECK(miss.err.find("CVE-1999-9999") != std::string::npos);
}

TEST_CASE("demo: a full artifact tree from a cold start") {
    TempDir dir("demo");
    const RunResult r = run_cli("demo --out-dir " + dir.path.string());
    REQUIRE(r.exit_code == 0);

    CHECK(fs::exists(dir.path / "fixture" / "demo.json"));
    CHECK(fs::exists(dir.path / "fixture" / "demo_two_goal.json"));
    CHECK(fs::exists(dir.path / "fixture" / "nvd_fixtures" / "CVE-2014-0098.json"));
    CHECK(slurp(dir.path / "fixture" / "demo.json") == slurp(kDemoGraph));

    const std::string analysis = slurp(dir.path / "analysis.csv");
    CHECK(csv_value(analysis, "summary,epl,") == "4.01795901046");
    CHECK(csv_value(analysis, "summary,ei_cum,") == "29.599370489");

    const std::string forecast = slurp(dir.path / "forecast.csv");
    CHECK(data_rows(forecast) == 151);
    CHECK(slurp(dir.path / "crossings.csv").find("epl,4.86,falls_below,0") != std::string::npos);

    const std::string hist = slurp(dir.path / "histogram.csv");
    CHECK(hist.find("\n0,") != std::string::npos);
    CHECK(hist.find("\n150,") != std::string::npos);
    CHECK(hist.find("\n300,") != std::string::npos);
    const std::string visits = slurp(dir.path / "visits.csv");
    CHECK(visits.find("0,start,2000") != std::string::npos);
    CHECK(visits.find("300,start,2000") != std::string::npos);

    // the emitted fixture tree is immediately usable as input
    const RunResult reuse = run_cli("analyze " + (dir.path / "fixture" / "demo.json").string());
    CHECK(reuse.exit_code == 0);
    CHECK(csv_value(reuse.out, "summary,epl,") == "4.01795901046");
}

TEST_CASE("global flags thread through to the engine") {
    const RunResult eq4 = run_cli("analyze --lifecycle-form eq4_literal " + kDemoGraph);
    REQUIRE(eq4.exit_code == 0);
    CHECK(csv_value(eq4.out, "weight,CVE-2014-0098,") == "0.999329185569");

    const RunResult custom = run_cli("analyze --lifecycle-a 0.5 --lifecycle-k 0.01 " + kDemoGraph);
    REQUIRE(custom.exit_code == 0);
    // F(29) = 1 - sqrt(0.01/29)
    CHECK(csv_value(custom.out, "weight,CVE-2014-0098,") == "0.981430466182");

    CHECK(run_cli("analyze --lifecycle-form weibull " + kDemoGraph).exit_code == 2);
    CHECK(run_cli("analyze --lifecycle-a -1 " + kDemoGraph).exit_code == 2);
    CHECK(run_cli("analyze --pp-horizon 3 " + kDemoGraph).out.find("summary,pp_h3,0.240851845353") !=
          std::string::npos);
    CHECK(run_cli("analyze --ei-steps 3 " + kDemoGraph).out.find("summary,ei_t3,") !=
          std::string::npos);
}
