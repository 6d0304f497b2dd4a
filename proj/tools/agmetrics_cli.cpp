// agmetrics: attack-graph security metrics from CVSS-scored vulnerability data.
//
// Exit codes: 0 success, 2 validation failure (bad flags, unparsable or
// structurally invalid input), 3 I/O failure, 4 upstream lookup/network
// failure, 5 numeric failure. Standard output carries data only; diagnostics
// and progress go to standard error.

#include <CLI11.hpp>
#include <json.hpp>

#include "agmetrics/cvss.hpp"
#include "agmetrics/errors.hpp"
#include "agmetrics/fixtures.hpp"
#include "agmetrics/forecast.hpp"
#include "agmetrics/format.hpp"
#include "agmetrics/graph_io.hpp"
#include "agmetrics/impact.hpp"
#include "agmetrics/lifecycle.hpp"
#include "agmetrics/markov.hpp"
#include "agmetrics/nvd.hpp"
#include "agmetrics/simulate.hpp"
#include "agmetrics/version.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Globals {
    std::string mode = "temporal";
    std::string lifecycle_form = "pareto_cdf";
    double lifecycle_a = 0.26;
    double lifecycle_k = 0.00161;
    int min_age_days = 1;
    long ei_steps = 5;
    long pp_horizon = 5;
    std::string format = "csv";
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    std::string fixtures;  // NVD fixture directory; empty = none
    std::string cache_dir; // empty = per-user default
    bool lenient = false;
    bool online = false;   // network lookups are opt-in
};

/// Carries validate_graph output up to the exit-code mapping, one message
/// per line on stderr.
struct ValidationFailure {
    std::vector<agm::Diagnostic> diagnostics;
};

agm::LifecycleParams lifecycle_from(const Globals& g) {
    agm::LifecycleParams p;
    p.a = g.lifecycle_a;
    p.k = g.lifecycle_k;
    p.form = agm::lifecycle_form_from_string(g.lifecycle_form);
    p.min_age_days = g.min_age_days;
    p.check();
    return p;
}

agm::NvdOptions nvd_options_from(const Globals& g) {
    agm::NvdOptions o;
    if (!g.fixtures.empty()) o.fixtures_dir = g.fixtures;
    if (!g.cache_dir.empty()) o.cache_dir = g.cache_dir;
    o.offline = !g.online;
    return o;
}

/// Shared ingestion path for the metric commands: parse (without structural
/// validation), fill missing factors from lookups, then validate.
agm::AttackGraph prepared_graph(const std::string& path, const Globals& g) {
    agm::ParseOptions parse_opts{g.lenient, /*validate=*/false};
    agm::AttackGraph graph = agm::load_graph(path, parse_opts);
    graph = agm::hydrate_graph(graph, nvd_options_from(g));
    auto diags = agm::validate_graph(graph);
    if (!diags.empty()) throw ValidationFailure{std::move(diags)};
    return graph;
}

void write_file(const fs::path& path, const std::string& content) {
    if (const fs::path parent = path.parent_path(); !parent.empty()) {
        std::error_code ec;
        fs::create_directories(parent, ec);
        if (ec) throw agm::IoError("cannot create directory " + parent.string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw agm::IoError("cannot write " + path.string());
    out << content;
    if (!out) throw agm::IoError("short write to " + path.string());
    std::cerr << "wrote " << path.string() << "\n";
}

std::string ext_for(const Globals& g) { return g.format == "json" ? ".json" : ".csv"; }

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOutput {
    agm::TransitionMatrix matrix;
    agm::ChainAnalysis analysis;
    double ei_instantaneous = 0.0;
    double ei_cumulative = 0.0;
    std::vector<std::pair<std::string, double>> weights;
};

AnalyzeOutput analyze_graph(const agm::AttackGraph& graph, long day_offset, const Globals& g) {
    const agm::LifecycleParams lifecycle = lifecycle_from(g);
    const agm::ScoringMode mode = agm::scoring_mode_from_string(g.mode);

    AnalyzeOutput out;
    out.matrix = agm::build_transition_matrix(graph, day_offset, lifecycle, mode);
    const long horizons[] = {g.pp_horizon};
    out.analysis = agm::analyze_chain(out.matrix, horizons);

    std::vector<agm::Diagnostic> warnings;
    const agm::RewardVector rewards = agm::reward_vector(graph, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w.message << "\n";
    out.ei_instantaneous = agm::expected_impact(out.matrix, rewards, 0, g.ei_steps);
    out.ei_cumulative =
        agm::cumulative_expected_impact(out.analysis.fundamental, out.matrix, rewards, 0);

    for (const auto& v : graph.vulnerabilities) {
        const double w = mode == agm::ScoringMode::Temporal
                             ? agm::temporal_weight(v, graph.scoring_date, day_offset, lifecycle)
                             : 1.0;
        out.weights.emplace_back(v.cve_id, w);
    }
    return out;
}

std::string analyze_csv(const agm::AttackGraph& graph, const AnalyzeOutput& a, const Globals& g) {
    std::ostringstream out;
    out << "# agmetrics " << agm::kVersion << " analyze\n";
    out << "# graph=" << graph.name << "\n";
    out << "# mode=" << g.mode << "\n";
    out << "# lifecycle_form=" << g.lifecycle_form << "\n";
    out << "# lifecycle_a=" << agm::format_sig(g.lifecycle_a, 9) << "\n";
    out << "# lifecycle_k=" << agm::format_sig(g.lifecycle_k, 9) << "\n";
    out << "# min_age_days=" << g.min_age_days << "\n";
    out << "# day_offset=" << a.analysis.day_offset << "\n";
    out << "section,key,value\n";
    const auto val = [](double v) { return agm::format_sig(v, 12); };
    out << "summary,epl," << val(a.analysis.epl) << "\n";
    out << "summary,pp_h" << g.pp_horizon << "," << val(a.analysis.finite_horizon.at(g.pp_horizon))
        << "\n";
    out << "summary,ei_t" << g.ei_steps << "," << val(a.ei_instantaneous) << "\n";
    out << "summary,ei_cum," << val(a.ei_cumulative) << "\n";
    for (const auto& [goal, p] : a.analysis.absorption) {
        out << "absorption," << goal << "," << val(p) << "\n";
    }
    for (const auto& entry : a.analysis.node_rank) {
        out << "rank," << entry.state_id << "," << val(entry.expected_visits) << "\n";
    }
    for (const auto& [cve, w] : a.weights) out << "weight," << cve << "," << val(w) << "\n";
    return out.str();
}

ordered_json lifecycle_json(const Globals& g) {
    return ordered_json{{"form", g.lifecycle_form},
                        {"a", g.lifecycle_a},
                        {"k", g.lifecycle_k},
                        {"min_age_days", g.min_age_days}};
}

std::string analyze_json(const agm::AttackGraph& graph, const AnalyzeOutput& a, const Globals& g,
                         bool dump_matrix) {
    ordered_json doc;
    doc["tool"] = "agmetrics";
    doc["version"] = std::string(agm::kVersion);
    doc["command"] = "analyze";
    doc["graph"] = graph.name;
    doc["mode"] = g.mode;
    doc["lifecycle"] = lifecycle_json(g);
    doc["day_offset"] = a.analysis.day_offset;
    doc["epl"] = a.analysis.epl;
    doc["pp"] = ordered_json{{"horizon", g.pp_horizon},
                             {"value", a.analysis.finite_horizon.at(g.pp_horizon)}};
    doc["ei"] = ordered_json{{"steps", g.ei_steps},
                             {"instantaneous", a.ei_instantaneous},
                             {"cumulative", a.ei_cumulative}};
    doc["absorption"] = ordered_json::object();
    for (const auto& [goal, p] : a.analysis.absorption) doc["absorption"][goal] = p;
    doc["rank"] = ordered_json::array();
    for (const auto& entry : a.analysis.node_rank) {
        doc["rank"].push_back(
            ordered_json{{"state", entry.state_id}, {"expected_visits", entry.expected_visits}});
    }
    doc["weights"] = ordered_json::object();
    for (const auto& [cve, w] : a.weights) doc["weights"][cve] = w;
    if (dump_matrix) {
        doc["matrix"] = ordered_json::object();
        doc["matrix"]["states"] = a.matrix.state_order;
        doc["matrix"]["rows"] = ordered_json::array();
        for (std::size_t i = 0; i < a.matrix.state_order.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t j = 0; j < a.matrix.state_order.size(); ++j) {
                row.push_back(a.matrix.entries(i, j));
            }
            doc["matrix"]["rows"].push_back(std::move(row));
        }
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// forecast / simulate serialization (JSON mirrors of the CSV artifacts)

ordered_json forecast_row_json(const agm::ForecastRow& r) {
    ordered_json j;
    j["day"] = r.day_offset;
    j["epl"] = r.epl;
    j["pp"] = r.pp;
    j["absorption"] = ordered_json::object();
    for (const auto& [goal, p] : r.absorption) j["absorption"][goal] = p;
    j["ei_instantaneous"] = r.ei_instantaneous;
    j["ei_cumulative"] = r.ei_cumulative;
    j["weights"] = ordered_json::object();
    for (const auto& [cve, w] : r.weights) j["weights"][cve] = w;
    j["rank_top"] = r.rank_top;
    return j;
}

std::string forecast_json(const agm::AttackGraph& graph, std::span<const agm::ForecastRow> series,
                          const agm::ForecastConfig& config, const Globals& g) {
    ordered_json doc;
    doc["tool"] = "agmetrics";
    doc["version"] = std::string(agm::kVersion);
    doc["command"] = "forecast";
    doc["graph"] = graph.name;
    doc["mode"] = std::string(agm::to_string(config.mode));
    doc["lifecycle"] = lifecycle_json(g);
    doc["horizon_days"] = config.horizon_days;
    doc["step_days"] = config.step_days;
    doc["ei_steps"] = config.ei_steps;
    doc["pp_horizon"] = config.pp_horizon;
    doc["rows"] = ordered_json::array();
    for (const auto& r : series) doc["rows"].push_back(forecast_row_json(r));
    return doc.dump(2) + "\n";
}

std::string crossings_json(std::span<const agm::ThresholdCrossing> crossings) {
    ordered_json doc;
    doc["crossings"] = ordered_json::array();
    for (const auto& c : crossings) {
        ordered_json j;
        j["metric"] = c.metric;
        j["threshold"] = c.threshold;
        j["direction"] = std::string(agm::to_string(c.direction));
        if (c.first_day) j["first_day"] = *c.first_day;
        else j["first_day"] = nullptr;
        doc["crossings"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

ordered_json simulation_meta(const agm::SimulationConfig& config) {
    return ordered_json{{"seed", config.seed},
                        {"runs", config.runs},
                        {"rng", std::string(agm::kRngId)},
                        {"max_steps", config.max_steps},
                        {"mode", std::string(agm::to_string(config.mode))}};
}

std::string histogram_json(std::span<const agm::SimulationReport> reports,
                           const agm::SimulationConfig& config) {
    ordered_json doc = simulation_meta(config);
    doc["reports"] = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json j;
        j["day"] = r.day_offset;
        j["histogram"] = ordered_json::array();
        for (const auto& [length, count] : r.path_length_histogram) {
            j["histogram"].push_back(ordered_json{{"length", length}, {"count", count}});
        }
        j["truncated"] = r.truncated_runs;
        doc["reports"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string visits_json(std::span<const agm::SimulationReport> reports,
                        const agm::SimulationConfig& config) {
    ordered_json doc = simulation_meta(config);
    doc["reports"] = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json j;
        j["day"] = r.day_offset;
        j["visits"] = ordered_json::array();
        for (const auto& [state, visits] : r.visit_counts) {
            j["visits"].push_back(ordered_json{{"state", state}, {"visits", visits}});
        }
        doc["reports"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_validate(const std::string& path, const Globals& g) {
    agm::AttackGraph graph = agm::load_graph(path, agm::ParseOptions{g.lenient, /*validate=*/false});
    const auto diags = agm::validate_graph(graph);
    for (const auto& d : diags) {
        std::cerr << agm::to_string(d.code) << ": " << d.message << "\n";
    }
    return diags.empty() ? 0 : 2;
}

int cmd_analyze(const std::string& path, long day_offset, bool dump_matrix, const Globals& g) {
    const agm::AttackGraph graph = prepared_graph(path, g);
    const AnalyzeOutput a = analyze_graph(graph, day_offset, g);
    if (g.format == "json") {
        std::cout << analyze_json(graph, a, g, dump_matrix);
    } else {
        std::cout << analyze_csv(graph, a, g);
        if (dump_matrix) {
            std::cout << "# transition matrix\n" << agm::matrix_csv(a.matrix);
        }
    }
    return 0;
}

struct ForecastFlags {
    long horizon = 150;
    long step = 1;
    std::optional<double> threshold_epl;
    std::optional<double> threshold_pp;
    std::optional<double> threshold_ei;
};

int cmd_forecast(const std::string& path, const ForecastFlags& f, const Globals& g) {
    const agm::AttackGraph graph = prepared_graph(path, g);
    agm::ForecastConfig config;
    config.horizon_days = f.horizon;
    config.step_days = f.step;
    config.mode = agm::scoring_mode_from_string(g.mode);
    config.lifecycle = lifecycle_from(g);
    config.ei_steps = g.ei_steps;
    config.pp_horizon = g.pp_horizon;
    const std::vector<agm::ForecastRow> series = agm::forecast_series(graph, config);

    const fs::path out_dir(g.out_dir);
    if (g.format == "json") {
        write_file(out_dir / "forecast.json", forecast_json(graph, series, config, g));
    } else {
        write_file(out_dir / "forecast.csv", agm::forecast_csv(series, config));
    }

    std::vector<agm::ThresholdCrossing> crossings;
    if (f.threshold_epl) {
        crossings.push_back(agm::threshold_crossings(series, "epl", *f.threshold_epl,
                                                     agm::CrossDirection::falls_below));
    }
    if (f.threshold_pp) {
        crossings.push_back(agm::threshold_crossings(series, "pp", *f.threshold_pp,
                                                     agm::CrossDirection::rises_above));
    }
    if (f.threshold_ei) {
        crossings.push_back(agm::threshold_crossings(series, "ei", *f.threshold_ei,
                                                     agm::CrossDirection::rises_above));
    }
    if (!crossings.empty()) {
        if (g.format == "json") {
            write_file(out_dir / "crossings.json", crossings_json(crossings));
        } else {
            write_file(out_dir / "crossings.csv", agm::crossings_csv(crossings));
        }
    }
    return 0;
}

struct SimulateFlags {
    std::int64_t runs = 2000;
    std::int64_t max_steps = 10000;
    std::vector<long> day_offsets = {0};
};

int cmd_simulate(const std::string& path, const SimulateFlags& f, const Globals& g) {
    const agm::AttackGraph graph = prepared_graph(path, g);
    agm::SimulationConfig config;
    config.runs = f.runs;
    config.seed = g.seed;
    config.max_steps = f.max_steps;
    config.mode = agm::scoring_mode_from_string(g.mode);
    config.lifecycle = lifecycle_from(g);
    const std::vector<agm::SimulationReport> reports =
        agm::multi_day_simulation(graph, f.day_offsets, config);

    const fs::path out_dir(g.out_dir);
    if (g.format == "json") {
        write_file(out_dir / "histogram.json", histogram_json(reports, config));
        write_file(out_dir / "visits.json", visits_json(reports, config));
    } else {
        write_file(out_dir / "histogram.csv", agm::histogram_csv(reports, config));
        write_file(out_dir / "visits.csv", agm::visits_csv(reports, config));
    }
    return 0;
}

int cmd_fetch_cvss(const std::vector<std::string>& ids, const Globals& g) {
    const agm::NvdOptions options = nvd_options_from(g);
    std::vector<agm::CveLookup> lookups;
    lookups.reserve(ids.size());
    for (const std::string& id : ids) lookups.push_back(agm::fetch_cvss(id, options));

    if (g.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& l : lookups) {
            const auto e = agm::lookup_exploitability(l);
            doc.push_back(ordered_json{{"cve", l.cve_id},
                                       {"av", l.av},
                                       {"ac", l.ac},
                                       {"au", l.au},
                                       {"c", l.c},
                                       {"i", l.i},
                                       {"a", l.a},
                                       {"published", agm::format_date(l.published_date)},
                                       {"source", agm::to_string(l.source)},
                                       {"exploitability", e.raw},
                                       {"exploitability_rounded", e.rounded}});
        }
        std::cout << doc.dump(2) + "\n";
    } else {
        std::cout << "cve,av,ac,au,c,i,a,published,source,exploitability,exploitability_rounded\n";
        for (const auto& l : lookups) {
            const auto e = agm::lookup_exploitability(l);
            char rounded[32];
            std::snprintf(rounded, sizeof rounded, "%.1f", e.rounded);
            std::cout << l.cve_id << "," << l.av << "," << l.ac << "," << l.au << "," << l.c << ","
                      << l.i << "," << l.a << "," << agm::format_date(l.published_date) << ","
                      << agm::to_string(l.source) << "," << agm::format_sig(e.raw, 12) << ","
                      << rounded << "\n";
        }
    }
    return 0;
}

int cmd_demo(const Globals& g) {
    const fs::path out_dir(g.out_dir);
    agm::fixtures::write_demo_tree(out_dir / "fixture");
    std::cerr << "wrote " << (out_dir / "fixture").string() << " (graphs + NVD documents)\n";
    const std::string graph_path = (out_dir / "fixture" / "demo.json").string();

    Globals demo_globals = g;
    demo_globals.fixtures = (out_dir / "fixture" / "nvd_fixtures").string();

    const agm::AttackGraph graph = prepared_graph(graph_path, demo_globals);
    const AnalyzeOutput a = analyze_graph(graph, 0, demo_globals);
    if (g.format == "json") {
        write_file(out_dir / ("analysis" + ext_for(g)), analyze_json(graph, a, demo_globals, false));
    } else {
        write_file(out_dir / ("analysis" + ext_for(g)), analyze_csv(graph, a, demo_globals));
    }

    ForecastFlags forecast_flags;
    forecast_flags.horizon = 150;
    forecast_flags.step = 1;
    forecast_flags.threshold_epl = 4.86;
    cmd_forecast(graph_path, forecast_flags, demo_globals);

    SimulateFlags sim_flags;
    sim_flags.runs = 2000;
    sim_flags.day_offsets = {0, 150, 300};
    cmd_simulate(graph_path, sim_flags, demo_globals);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"attack-graph security metrics from CVSS-scored vulnerability data"};
    app.set_version_flag("--version", std::string(agm::kVersion));
    app.require_subcommand(1);

    Globals g;
    app.add_option("--mode", g.mode, "Scoring mode: static or temporal")
        ->check(CLI::IsMember({"static", "temporal"}))
        ->capture_default_str();
    app.add_option("--lifecycle-form", g.lifecycle_form, "Exploit-availability curve form")
        ->check(CLI::IsMember({"pareto_cdf", "eq4_literal", "eq6_literal"}))
        ->capture_default_str();
    app.add_option("--lifecycle-a", g.lifecycle_a, "Lifecycle shape parameter a")
        ->capture_default_str();
    app.add_option("--lifecycle-k", g.lifecycle_k, "Lifecycle scale parameter k")
        ->capture_default_str();
    app.add_option("--min-age-days", g.min_age_days, "Minimum clamped vulnerability age in days")
        ->capture_default_str();
    app.add_option("--ei-steps", g.ei_steps, "Step count T for instantaneous expected impact")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--pp-horizon", g.pp_horizon, "Step horizon for the finite-horizon path probability")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "Directory for file outputs")->capture_default_str();
    app.add_option("--seed", g.seed, "Base seed for randomized commands")->capture_default_str();
    app.add_option("--fixtures", g.fixtures, "Directory of recorded CVE documents");
    app.add_option("--cache-dir", g.cache_dir, "CVE lookup cache directory");
    app.add_flag("--lenient", g.lenient, "Tolerate unknown keys in input files");
    app.add_flag("--online", g.online, "Allow network lookups for CVE data");

    std::string path;
    long day_offset = 0;
    bool dump_matrix = false;
    ForecastFlags forecast_flags;
    SimulateFlags simulate_flags;
    std::vector<std::string> cve_ids;

    CLI::App* validate = app.add_subcommand("validate", "Check a graph file's structural invariants");
    validate->add_option("path", path, "Graph file")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "One-day chain analysis to standard output");
    analyze->add_option("path", path, "Graph file")->required();
    analyze->add_option("--day-offset", day_offset, "Day offset for temporal scoring")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    analyze->add_flag("--dump-matrix", dump_matrix, "Also emit the transition matrix");

    CLI::App* forecast = app.add_subcommand("forecast", "Day-by-day metric series to --out-dir");
    forecast->add_option("path", path, "Graph file")->required();
    forecast->add_option("--horizon", forecast_flags.horizon, "Last day offset, inclusive")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    forecast->add_option("--step", forecast_flags.step, "Day step between rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    forecast->add_option("--threshold-epl", forecast_flags.threshold_epl,
                         "Report first day EPL falls below this value");
    forecast->add_option("--threshold-pp", forecast_flags.threshold_pp,
                         "Report first day the path probability rises above this value");
    forecast->add_option("--threshold-ei", forecast_flags.threshold_ei,
                         "Report first day instantaneous EI rises above this value");

    CLI::App* simulate = app.add_subcommand("simulate", "Seeded random-walk simulation to --out-dir");
    simulate->add_option("path", path, "Graph file")->required();
    simulate->add_option("--runs", simulate_flags.runs, "Attack instances per day offset")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    simulate->add_option("--max-steps", simulate_flags.max_steps, "Per-run step cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate
        ->add_option("--day-offsets", simulate_flags.day_offsets,
                     "Comma-separated day offsets, strictly increasing")
        ->delimiter(',')
        ->capture_default_str();

    CLI::App* fetch = app.add_subcommand("fetch-cvss", "Look up CVSS v2 vectors for CVE ids");
    fetch->add_option("cve", cve_ids, "CVE ids")->required();

    CLI::App* demo = app.add_subcommand(
        "demo", "Write the bundled fixture and run analyze+forecast+simulate into --out-dir");
    (void)demo;

    // global flags are accepted on either side of the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
        if (validate->parsed()) return cmd_validate(path, g);
        if (analyze->parsed()) return cmd_analyze(path, day_offset, dump_matrix, g);
        if (forecast->parsed()) return cmd_forecast(path, forecast_flags, g);
        if (simulate->parsed()) return cmd_simulate(path, simulate_flags, g);
        if (fetch->parsed()) return cmd_fetch_cvss(cve_ids, g);
        if (demo->parsed()) return cmd_demo(g);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationFailure& v) {
        for (const auto& d : v.diagnostics) {
            std::cerr << agm::to_string(d.code) << ": " << d.message << "\n";
        }
        return 2;
    } catch (const agm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const agm::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const agm::NotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const agm::NetworkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const agm::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
