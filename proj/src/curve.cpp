#include "thzcov/curve.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace thzcov {

namespace {
std::string fmt6(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}
} // namespace

std::string curve_to_csv(const CoverageCurve& curve)
{
    std::string out = curve.ci_halfwidth.empty()
                          ? "gamma_db,coverage,engine\n"
                          : "gamma_db,coverage,ci_halfwidth,engine\n";
    for (std::size_t i = 0; i < curve.gamma_db.size(); ++i) {
        out += fmt6(curve.gamma_db[i]);
        out += ',';
        out += fmt6(curve.values[i]);
        if (!curve.ci_halfwidth.empty()) {
            out += ',';
            out += fmt6(curve.ci_halfwidth[i]);
        }
        out += ',';
        out += curve.provenance;
        out += '\n';
    }
    return out;
}

std::string curve_to_json(const CoverageCurve& curve)
{
    nlohmann::json j;
    j["engine"] = curve.provenance;
    j["gamma_db"] = curve.gamma_db;
    j["coverage"] = curve.values;
    if (!curve.ci_halfwidth.empty()) j["ci_halfwidth"] = curve.ci_halfwidth;
    j["metadata"] = curve.metadata;
    return j.dump(2) + "\n";
}

std::vector<double> parse_gamma_grid(const std::string& spec)
{
    double a = 0.0, b = 0.0, step = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0.0 || b < a)
        throw std::runtime_error("bad gamma grid spec (expected a:b:step with step > 0): " + spec);
    std::vector<double> grid;
    long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i) grid.push_back(a + static_cast<double>(i) * step);
    return grid;
}

} // namespace thzcov
