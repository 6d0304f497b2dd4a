#pragma once

#include "agmetrics/types.hpp"

#include <string_view>

namespace agm::cvss {

// CVSS v2 factor enumerations (letter code -> decimal value):
//   AV: L=0.395  A=0.646  N=1.0
//   AC: H=0.35   M=0.61   L=0.71
//   Au: M=0.45   S=0.56   N=0.704
//   C/I/A: N=0.0  P=0.275  C=0.660
double av_value(std::string_view code);
double ac_value(std::string_view code);
double au_value(std::string_view code);
double cia_value(std::string_view code);

std::string_view av_code(double value);
std::string_view ac_code(double value);
std::string_view au_code(double value);
std::string_view cia_code(double value);

bool is_av_value(double v);
bool is_ac_value(double v);
bool is_au_value(double v);
bool is_cia_value(double v);

/// Half-up rounding to one fractional digit, display only. Every downstream
/// computation consumes raw values.
double round_one_decimal(double x);

struct ExploitabilityScore {
    double raw = 0.0;     // 20 * AV * AC * Au, in [0, 10.001]
    double rounded = 0.0; // raw rounded half-up to one decimal
};

struct ImpactScore {
    double raw = 0.0;     // 10.41 * (1 - (1-C)(1-I)(1-A)), in [0, 10.41]
    double rounded = 0.0;
};

/// Base exploitability subscore. Factors must be members of the v2
/// enumerations above; throws ParseError otherwise.
ExploitabilityScore base_exploitability(double av, double ac, double au);

/// Impact subscore from the C/I/A enumeration values.
ImpactScore impact_score(double c, double i, double a);

/// weight * base.raw, weight in [0,1]. Throws ParseError for a weight
/// outside the unit interval.
double temporal_exploitability(const ExploitabilityScore& base, double weight);

/// Exploitability of a vulnerability record times a temporal weight: the
/// override wins when present, else the base subscore from the factor triple.
/// Throws ParseError when the record has neither.
double effective_exploitability(const VulnerabilityRecord& v, double weight);

} // namespace agm::cvss
