#pragma once

#include "agmetrics/lifecycle.hpp"
#include "agmetrics/markov.hpp"
#include "agmetrics/types.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace agm {

/// RNG contract: every random stream is an mt19937_64 engine whose seed is the
/// n-th output of a splitmix64 sequence started at a caller-given base
/// (derive_stream_seed below). Reports record this identifier so results can
/// be reproduced independently of worker scheduling or library defaults.
inline constexpr std::string_view kRngId = "splitmix64+mt19937_64";

/// n-th splitmix64 output for base seed `base`, computed in O(1): splitmix64
/// walks its state by the 64-bit golden gamma per draw, so draw n is
/// mix(base + (n+1) * 0x9E3779B97F4A7C15) with the standard finalizer.
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index);

/// Day-level seed for multi-day protocols: base + index * golden gamma
/// (mod 2^64). Index 0 keeps the base seed, so a one-offset sweep reproduces
/// a standalone simulate_paths call exactly.
std::uint64_t derive_day_seed(std::uint64_t base, std::uint64_t offset_index);

struct SimulationReport {
    long day_offset = 0;
    std::int64_t runs = 0;
    std::uint64_t seed = 0;
    std::map<std::int64_t, std::int64_t> path_length_histogram; // absorbed runs only
    std::vector<std::pair<std::string, std::int64_t>> visit_counts; // canonical state order
    std::int64_t truncated_runs = 0; // runs that hit max_steps before absorbing
};

/// Seeded random walks from `start`: each run samples successors from the
/// current row by inverse CDF over the canonical state order until a goal or
/// max_steps. Every visit (including the start and the absorbing goal)
/// increments visit counts. Truncated runs are counted apart, never folded
/// into the histogram.
SimulationReport simulate_paths(const TransitionMatrix& t, std::size_t start, std::int64_t runs,
                                std::uint64_t seed, std::int64_t max_steps = 10000);

struct SimulationConfig {
    std::int64_t runs = 2000;
    std::uint64_t seed = 1;
    std::int64_t max_steps = 10000;
    ScoringMode mode = ScoringMode::Temporal;
    LifecycleParams lifecycle;
};

/// One report per day offset (offsets must be nonnegative and strictly
/// increasing), each on that day's rebuilt matrix with its derived day seed.
std::vector<SimulationReport> multi_day_simulation(const AttackGraph& g,
                                                   std::span<const long> day_offsets,
                                                   const SimulationConfig& config);

/// day,length,count rows with metadata comments (seed, runs, RNG id, max_steps).
std::string histogram_csv(std::span<const SimulationReport> reports, const SimulationConfig& config);

/// day,state,visits rows with the same metadata.
std::string visits_csv(std::span<const SimulationReport> reports, const SimulationConfig& config);

} // namespace agm
