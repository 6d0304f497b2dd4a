#include "agmetrics/simulate.hpp"

#include "agmetrics/errors.hpp"
#include "agmetrics/format.hpp"
#include "agmetrics/version.hpp"

#include <random>
#include <sstream>

namespace agm {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform in [0, 1) from the top 53 bits; avoids distribution classes whose
// output sequences are implementation-defined.
double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64_mix(base + (index + 1) * kGoldenGamma);
}

std::uint64_t derive_day_seed(std::uint64_t base, std::uint64_t offset_index) {
    return base + offset_index * kGoldenGamma;
}

SimulationReport simulate_paths(const TransitionMatrix& t, std::size_t start, std::int64_t runs,
                                std::uint64_t seed, std::int64_t max_steps) {
    const std::size_t n = t.state_order.size();
    if (start >= n) throw ParseError("simulation start index out of range");
    if (runs < 0) throw ParseError("simulation run count must be nonnegative");
    if (max_steps <= 0) throw ParseError("simulation max_steps must be positive");

    SimulationReport report;
    report.day_offset = t.day_offset;
    report.runs = runs;
    report.seed = seed;
    std::vector<std::int64_t> visits(n, 0);

    for (std::int64_t run = 0; run < runs; ++run) {
        std::mt19937_64 engine(derive_stream_seed(seed, static_cast<std::uint64_t>(run)));
        std::size_t state = start;
        ++visits[state];
        std::int64_t steps = 0;
        bool absorbed = state >= t.transient_count;
        while (!absorbed && steps < max_steps) {
            const double u = uniform01(engine);
            double cum = 0.0;
            std::size_t next = n - 1; // numeric slack lands on the last positive column
            for (std::size_t j = 0; j < n; ++j) {
                const double p = t.entries(state, j);
                if (p <= 0.0) continue;
                cum += p;
                next = j;
                if (u < cum) break;
            }
            state = next;
            ++visits[state];
            ++steps;
            absorbed = state >= t.transient_count;
        }
        if (absorbed) {
            ++report.path_length_histogram[steps];
        } else {
            ++report.truncated_runs;
        }
    }

    report.visit_counts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) report.visit_counts.emplace_back(t.state_order[i], visits[i]);
    return report;
}

std::vector<SimulationReport> multi_day_simulation(const AttackGraph& g,
                                                   std::span<const long> day_offsets,
                                                   const SimulationConfig& config) {
    long prev = -1;
    for (long d : day_offsets) {
        if (d < 0) throw ParseError("day offsets must be nonnegative");
        if (d <= prev) throw ParseError("day offsets must be strictly increasing");
        prev = d;
    }

    std::vector<SimulationReport> reports;
    reports.reserve(day_offsets.size());
    const std::size_t start = g.state_index("start") == AttackGraph::npos ? 0 : g.state_index("start");
    for (std::size_t i = 0; i < day_offsets.size(); ++i) {
        TransitionMatrix t = build_transition_matrix(g, day_offsets[i], config.lifecycle, config.mode);
        const std::uint64_t day_seed = derive_day_seed(config.seed, i);
        reports.push_back(simulate_paths(t, start, config.runs, day_seed, config.max_steps));
    }
    return reports;
}

namespace {

void simulation_metadata(std::ostringstream& out, const SimulationConfig& config) {
    out << "# agmetrics " << kVersion << " simulation\n";
    out << "# seed=" << config.seed << "\n";
    out << "# runs=" << config.runs << "\n";
    out << "# rng=" << kRngId << "\n";
    out << "# max_steps=" << config.max_steps << "\n";
    out << "# mode=" << to_string(config.mode) << "\n";
}

} // namespace

std::string histogram_csv(std::span<const SimulationReport> reports, const SimulationConfig& config) {
    std::ostringstream out;
    simulation_metadata(out, config);
    out << "day,length,count\n";
    for (const SimulationReport& r : reports) {
        for (const auto& [length, count] : r.path_length_histogram) {
            out << r.day_offset << "," << length << "," << count << "\n";
        }
        if (r.truncated_runs > 0) out << r.day_offset << ",truncated," << r.truncated_runs << "\n";
    }
    return out.str();
}

std::string visits_csv(std::span<const SimulationReport> reports, const SimulationConfig& config) {
    std::ostringstream out;
    simulation_metadata(out, config);
    out << "day,state,visits\n";
    for (const SimulationReport& r : reports) {
        for (const auto& [state, visits] : r.visit_counts) {
            out << r.day_offset << "," << state << "," << visits << "\n";
        }
    }
    return out.str();
}

} // namespace agm
