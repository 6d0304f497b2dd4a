#pragma once

#include "agmetrics/lifecycle.hpp"
#include "agmetrics/markov.hpp"
#include "agmetrics/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agm {

struct ForecastConfig {
    long horizon_days = 150;
    long step_days = 1;
    ScoringMode mode = ScoringMode::Temporal;
    LifecycleParams lifecycle;
    long ei_steps = 5;   // T for the instantaneous expected-impact column
    long pp_horizon = 5; // m for the finite-horizon path-probability column
    int rank_top_k = 3;
};

/// All metrics for one day offset. Rows are pure functions of
/// (graph, offset, config); a standalone analysis at the same offset
/// reproduces a series row exactly.
struct ForecastRow {
    long day_offset = 0;
    std::vector<std::pair<std::string, double>> weights; // cve -> temporal weight
    double epl = 0.0;
    double pp = 0.0; // total absorption probability by pp_horizon steps
    std::vector<std::pair<std::string, double>> absorption; // goal -> asymptotic probability
    double ei_instantaneous = 0.0;
    double ei_cumulative = 0.0;
    std::vector<std::string> rank_top; // top-k state ids by expected visits
};

/// Evaluates one row; forecast_series is this per offset.
ForecastRow forecast_row(const AttackGraph& g, long day_offset, const ForecastConfig& config);

/// Sweeps offsets 0, step, 2*step, ... <= horizon. Deterministic.
std::vector<ForecastRow> forecast_series(const AttackGraph& g, const ForecastConfig& config);

/// CSV with metadata comment lines and the header
/// day,epl,pp_h<H>,absorb_<goal>...,ei_t<T>,ei_cum,w_<cve>...
/// at 9 significant digits.
std::string forecast_csv(std::span<const ForecastRow> series, const ForecastConfig& config);

enum class CrossDirection { falls_below, rises_above };

std::string_view to_string(CrossDirection d);

struct ThresholdCrossing {
    std::string metric;
    double threshold = 0.0;
    CrossDirection direction = CrossDirection::falls_below;
    std::optional<long> first_day; // minimal offset where the strict comparison holds
};

/// Scans rows in day order for the first strict crossing. Metric names:
/// "epl", "pp", "ei", "ei_cum", "absorb_<goal>", "w_<cve>". Throws ParseError
/// for an unknown name.
ThresholdCrossing threshold_crossings(std::span<const ForecastRow> series, std::string_view metric,
                                      double threshold, CrossDirection direction);

std::string crossings_csv(std::span<const ThresholdCrossing> crossings);

} // namespace agm
