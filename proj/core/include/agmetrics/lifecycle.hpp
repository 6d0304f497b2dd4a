#pragma once

#include "agmetrics/date.hpp"
#include "agmetrics/types.hpp"

#include <string_view>

namespace agm {

/// Functional form of the exploit-availability curve. The published model is
/// internally ambiguous about the exact expression, so all three readings are
/// implemented and the choice is recorded in every output header:
///   pareto_cdf   F(t) = 1 - (k/t)^a        (standard Pareto CDF, the default)
///   eq4_literal  F(t) = 1 - k * t^(-a)
///   eq6_literal  F(t) = 1 - k^a / t
enum class LifecycleForm { pareto_cdf, eq4_literal, eq6_literal };

std::string_view to_string(LifecycleForm f);
LifecycleForm lifecycle_form_from_string(std::string_view s); // throws ParseError

struct LifecycleParams {
    double a = 0.26;
    double k = 0.00161;
    LifecycleForm form = LifecycleForm::pareto_cdf;
    int min_age_days = 1; // disclosure-day ages clamp up to this

    void check() const; // throws ParseError when a<=0, k<=0 or min_age_days<1
};

struct VulnerabilityAge {
    long days = 0;         // (scoring_date - disclosure) + day_offset
    long clamped_days = 1; // max(days, min_age_days)
};

/// Age of a vulnerability on `scoring_date` advanced by `day_offset` days.
/// Throws ParseError when disclosure postdates the scoring date.
VulnerabilityAge vulnerability_age(const Date& disclosure, const Date& scoring_date,
                                   long day_offset, int min_age_days = 1);

/// Probability that an exploit exists at age t, clamped into [0,1].
double exploit_availability(const VulnerabilityAge& t, const LifecycleParams& p);

/// Composition of vulnerability_age and exploit_availability for one record.
double temporal_weight(const VulnerabilityRecord& v, const Date& scoring_date,
                       long day_offset, const LifecycleParams& p);

} // namespace agm
