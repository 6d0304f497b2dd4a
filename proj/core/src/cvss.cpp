#include "agmetrics/cvss.hpp"

#include "agmetrics/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace agm::cvss {
namespace {

struct EnumEntry {
    std::string_view code;
    double value;
};

constexpr std::array<EnumEntry, 3> kAv{{{"L", 0.395}, {"A", 0.646}, {"N", 1.0}}};
constexpr std::array<EnumEntry, 3> kAc{{{"H", 0.35}, {"M", 0.61}, {"L", 0.71}}};
constexpr std::array<EnumEntry, 3> kAu{{{"M", 0.45}, {"S", 0.56}, {"N", 0.704}}};
constexpr std::array<EnumEntry, 3> kCia{{{"N", 0.0}, {"P", 0.275}, {"C", 0.660}}};

double lookup(const std::array<EnumEntry, 3>& table, std::string_view code, const char* metric) {
    for (const auto& e : table) {
        if (e.code == code) return e.value;
    }
    throw ParseError(std::string("unknown CVSS v2 ") + metric + " code '" + std::string(code) + "'");
}

std::string_view reverse_lookup(const std::array<EnumEntry, 3>& table, double value, const char* metric) {
    for (const auto& e : table) {
        if (e.value == value) return e.code;
    }
    throw ParseError(std::string("value is not a CVSS v2 ") + metric + " enumeration member");
}

bool member(const std::array<EnumEntry, 3>& table, double v) {
    for (const auto& e : table) {
        if (e.value == v) return true;
    }
    return false;
}

void require(bool ok, const char* what) {
    if (!ok) throw ParseError(std::string("factor not in CVSS v2 enumeration: ") + what);
}

} // namespace

double av_value(std::string_view code) { return lookup(kAv, code, "AV"); }
double ac_value(std::string_view code) { return lookup(kAc, code, "AC"); }
double au_value(std::string_view code) { return lookup(kAu, code, "Au"); }
double cia_value(std::string_view code) { return lookup(kCia, code, "C/I/A"); }

std::string_view av_code(double v) { return reverse_lookup(kAv, v, "AV"); }
std::string_view ac_code(double v) { return reverse_lookup(kAc, v, "AC"); }
std::string_view au_code(double v) { return reverse_lookup(kAu, v, "Au"); }
std::string_view cia_code(double v) { return reverse_lookup(kCia, v, "C/I/A"); }

bool is_av_value(double v) { return member(kAv, v); }
bool is_ac_value(double v) { return member(kAc, v); }
bool is_au_value(double v) { return member(kAu, v); }
bool is_cia_value(double v) { return member(kCia, v); }

double round_one_decimal(double x) {
    return std::floor(x * 10.0 + 0.5) / 10.0;
}

ExploitabilityScore base_exploitability(double av, double ac, double au) {
    require(is_av_value(av), "AV");
    require(is_ac_value(ac), "AC");
    require(is_au_value(au), "Au");
    const double raw = 20.0 * av * ac * au;
    return {raw, round_one_decimal(raw)};
}

ImpactScore impact_score(double c, double i, double a) {
    require(is_cia_value(c), "C");
    require(is_cia_value(i), "I");
    require(is_cia_value(a), "A");
    const double raw = 10.41 * (1.0 - (1.0 - c) * (1.0 - i) * (1.0 - a));
    return {raw, round_one_decimal(raw)};
}

double temporal_exploitability(const ExploitabilityScore& base, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw ParseError("temporal weight outside [0,1]");
    }
    return weight * base.raw;
}

double effective_exploitability(const VulnerabilityRecord& v, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw ParseError("temporal weight outside [0,1]");
    }
    if (v.exploitability_override) {
        return weight * *v.exploitability_override;
    }
    if (v.has_factor_triple()) {
        const auto base = base_exploitability(*v.access_vector, *v.access_complexity, *v.authentication);
        return weight * base.raw;
    }
    throw ParseError("vulnerability " + v.cve_id +
                     " has neither an exploitability override nor a full AV/AC/Au factor triple");
}

} // namespace agm::cvss
