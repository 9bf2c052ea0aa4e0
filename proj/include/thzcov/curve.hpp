#pragma once

#include <map>
#include <string>
#include <vector>

namespace thzcov {

// SINR-threshold grid with coverage values, tagged with engine provenance.
struct CoverageCurve {
    std::vector<double> gamma_db;
    std::vector<double> values;
    std::vector<double> ci_halfwidth; // empty for the analytic engine
    std::string provenance;           // "analytic" | "monte-carlo"
    std::map<std::string, std::string> metadata;
};

// CSV with a header row and 6 significant digits; deterministic bytes.
std::string curve_to_csv(const CoverageCurve& curve);
std::string curve_to_json(const CoverageCurve& curve);

// Parse "a:b:step" (dB) into an inclusive grid.
std::vector<double> parse_gamma_grid(const std::string& spec);

} // namespace thzcov
