#include "agmetrics/forecast.hpp"

#include "agmetrics/errors.hpp"
#include "agmetrics/format.hpp"
#include "agmetrics/impact.hpp"
#include "agmetrics/version.hpp"

#include <sstream>

namespace agm {

ForecastRow forecast_row(const AttackGraph& g, long day_offset, const ForecastConfig& config) {
    ForecastRow row;
    row.day_offset = day_offset;

    for (const auto& v : g.vulnerabilities) {
        const double w = config.mode == ScoringMode::Temporal
                             ? temporal_weight(v, g.scoring_date, day_offset, config.lifecycle)
                             : 1.0;
        row.weights.emplace_back(v.cve_id, w);
    }

    const TransitionMatrix t =
        build_transition_matrix(g, day_offset, config.lifecycle, config.mode);
    const Matrix fundamental = fundamental_matrix(t);
    row.epl = expected_path_length(fundamental);
    row.pp = finite_horizon_total_absorption(t, 0, config.pp_horizon);
    const auto absorb = absorption_probabilities(fundamental, t);
    for (std::size_t j = 0; j < absorb.size(); ++j) {
        row.absorption.emplace_back(t.state_order[t.transient_count + j], absorb[j]);
    }

    const RewardVector rewards = reward_vector(g);
    row.ei_instantaneous = expected_impact(t, rewards, 0, config.ei_steps);
    row.ei_cumulative = cumulative_expected_impact(fundamental, t, rewards, 0);

    const auto rank = node_rank(fundamental, t);
    const int k = std::min<int>(config.rank_top_k, static_cast<int>(rank.size()));
    for (int i = 0; i < k; ++i) row.rank_top.push_back(rank[i].state_id);

    return row;
}

std::vector<ForecastRow> forecast_series(const AttackGraph& g, const ForecastConfig& config) {
    if (config.horizon_days < 0) throw ParseError("forecast horizon must be >= 0");
    if (config.step_days < 1) throw ParseError("forecast step must be >= 1");
    std::vector<ForecastRow> series;
    for (long day = 0; day <= config.horizon_days; day += config.step_days) {
        series.push_back(forecast_row(g, day, config));
    }
    return series;
}

std::string forecast_csv(std::span<const ForecastRow> series, const ForecastConfig& config) {
    std::ostringstream out;
    out << "# agmetrics " << kVersion << " forecast\n";
    out << "# mode=" << to_string(config.mode) << '\n';
    out << "# lifecycle_form=" << to_string(config.lifecycle.form) << '\n';
    out << "# lifecycle_a=" << format_sig(config.lifecycle.a, 9) << '\n';
    out << "# lifecycle_k=" << format_sig(config.lifecycle.k, 9) << '\n';
    out << "# min_age_days=" << config.lifecycle.min_age_days << '\n';
    out << "# ei_steps=" << config.ei_steps << '\n';
    out << "# pp_horizon=" << config.pp_horizon << '\n';

    out << "day,epl,pp_h" << config.pp_horizon;
    if (!series.empty()) {
        for (const auto& [goal, p] : series.front().absorption) {
            (void)p;
            out << ",absorb_" << goal;
        }
        out << ",ei_t" << config.ei_steps << ",ei_cum";
        for (const auto& [cve, w] : series.front().weights) {
            (void)w;
            out << ",w_" << cve;
        }
    } else {
        out << ",ei_t" << config.ei_steps << ",ei_cum";
    }
    out << '\n';

    for (const auto& row : series) {
        out << row.day_offset << ',' << format_sig(row.epl, 9) << ',' << format_sig(row.pp, 9);
        for (const auto& [goal, p] : row.absorption) {
            (void)goal;
            out << ',' << format_sig(p, 9);
        }
        out << ',' << format_sig(row.ei_instantaneous, 9) << ',' << format_sig(row.ei_cumulative, 9);
        for (const auto& [cve, w] : row.weights) {
            (void)cve;
            out << ',' << format_sig(w, 9);
        }
        out << '\n';
    }
    return out.str();
}

std::string_view to_string(CrossDirection d) {
    return d == CrossDirection::falls_below ? "falls_below" : "rises_above";
}

namespace {

double metric_value(const ForecastRow& row, std::string_view metric) {
    if (metric == "epl") return row.epl;
    if (metric == "pp") return row.pp;
    if (metric == "ei") return row.ei_instantaneous;
    if (metric == "ei_cum") return row.ei_cumulative;
    if (metric.starts_with("absorb_")) {
        const auto goal = metric.substr(7);
        for (const auto& [id, p] : row.absorption) {
            if (id == goal) return p;
        }
        throw ParseError("unknown goal in metric name '" + std::string(metric) + "'");
    }
    if (metric.starts_with("w_")) {
        const auto cve = metric.substr(2);
        for (const auto& [id, w] : row.weights) {
            if (id == cve) return w;
        }
        throw ParseError("unknown vulnerability in metric name '" + std::string(metric) + "'");
    }
    throw ParseError("unknown metric name '" + std::string(metric) + "'");
}

} // namespace

ThresholdCrossing threshold_crossings(std::span<const ForecastRow> series, std::string_view metric,
                                      double threshold, CrossDirection direction) {
    ThresholdCrossing crossing;
    crossing.metric = std::string(metric);
    crossing.threshold = threshold;
    crossing.direction = direction;
    for (const auto& row : series) {
        const double v = metric_value(row, metric);
        // comparisons are strict; a value equal to the threshold does not trigger
        const bool hit = direction == CrossDirection::falls_below ? v < threshold : v > threshold;
        if (hit) {
            crossing.first_day = row.day_offset;
            break;
        }
    }
    return crossing;
}

std::string crossings_csv(std::span<const ThresholdCrossing> crossings) {
    std::ostringstream out;
    out << "metric,threshold,direction,first_day\n";
    for (const auto& c : crossings) {
        out << c.metric << ',' << format_sig(c.threshold, 9) << ',' << to_string(c.direction) << ',';
        if (c.first_day) {
            out << *c.first_day;
        } else {
            out << "none";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace agm
