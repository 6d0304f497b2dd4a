#include "agmetrics/lifecycle.hpp"

#include "agmetrics/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace agm {

std::string_view to_string(LifecycleForm f) {
    switch (f) {
    case LifecycleForm::pareto_cdf: return "pareto_cdf";
    case LifecycleForm::eq4_literal: return "eq4_literal";
    case LifecycleForm::eq6_literal: return "eq6_literal";
    }
    return "pareto_cdf";
}

LifecycleForm lifecycle_form_from_string(std::string_view s) {
    if (s == "pareto_cdf") return LifecycleForm::pareto_cdf;
    if (s == "eq4_literal") return LifecycleForm::eq4_literal;
    if (s == "eq6_literal") return LifecycleForm::eq6_literal;
    throw ParseError("unknown lifecycle form '" + std::string(s) +
                     "' (expected pareto_cdf, eq4_literal or eq6_literal)");
}

void LifecycleParams::check() const {
    if (!(a > 0.0)) throw ParseError("lifecycle parameter a must be > 0");
    if (!(k > 0.0)) throw ParseError("lifecycle parameter k must be > 0");
    if (min_age_days < 1) throw ParseError("min_age_days must be >= 1");
}

VulnerabilityAge vulnerability_age(const Date& disclosure, const Date& scoring_date,
                                   long day_offset, int min_age_days) {
    const long base = days_between(disclosure, scoring_date);
    if (base < 0) {
        throw ParseError("disclosure date " + format_date(disclosure) +
                         " is after the scoring date " + format_date(scoring_date));
    }
    VulnerabilityAge age;
    age.days = base + day_offset;
    age.clamped_days = std::max<long>(age.days, min_age_days);
    return age;
}

double exploit_availability(const VulnerabilityAge& t, const LifecycleParams& p) {
    p.check();
    const double td = static_cast<double>(t.clamped_days);
    double f = 0.0;
    switch (p.form) {
    case LifecycleForm::pareto_cdf:
        f = 1.0 - std::pow(p.k / td, p.a);
        break;
    case LifecycleForm::eq4_literal:
        f = 1.0 - p.k * std::pow(td, -p.a);
        break;
    case LifecycleForm::eq6_literal:
        f = 1.0 - std::pow(p.k, p.a) / td;
        break;
    }
    return std::clamp(f, 0.0, 1.0);
}

double temporal_weight(const VulnerabilityRecord& v, const Date& scoring_date,
                       long day_offset, const LifecycleParams& p) {
    const auto age = vulnerability_age(v.disclosure_date, scoring_date, day_offset, p.min_age_days);
    return exploit_availability(age, p);
}

} // namespace agm
