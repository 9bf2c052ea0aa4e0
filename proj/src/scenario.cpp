#include "thzcov/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace thzcov {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ScenarioError(msg); }

double parse_double(std::string_view key, std::string_view v)
{
    try {
        std::size_t pos = 0;
        double x = std::stod(std::string(v), &pos);
        if (pos != v.size()) fail("invalid numeric value for key '" + std::string(key) + "': " + std::string(v));
        return x;
    } catch (const ScenarioError&) {
        throw;
    } catch (...) {
        fail("invalid numeric value for key '" + std::string(key) + "': " + std::string(v));
    }
}

long parse_long(std::string_view key, std::string_view v)
{
    double x = parse_double(key, v);
    long n = static_cast<long>(x);
    if (static_cast<double>(n) != x) fail("key '" + std::string(key) + "' must be an integer");
    return n;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

void Scenario::validate() const
{
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0)) fail(std::string(key) + ": must be strictly positive");
    };
    positive(f, "f");
    if (eps_f < 0.0) fail("eps_f: must be nonnegative");
    if (!(h_U < h_B && h_B < h_A)) fail("h_U < h_B < h_A violated");
    positive(R_B, "R_B");
    positive(lambda_A, "lambda_A");
    positive(lambda_B, "lambda_B");
    positive(lambda_W, "lambda_W");
    positive(mean_L_W, "mean_L_W");
    if (N_A < 2) fail("N_A: must be >= 2");
    if (N_U < 2) fail("N_U: must be >= 2");
    positive(R_A, "R_A");
    if (sigma_theta_deg < 0.0) fail("sigma_theta_deg: must be nonnegative");
    if (mftr.K < 0.0) fail("K: must be >= 0");
    if (!(mftr.m > 0.0)) fail("m: must be > 0");
    if (mftr.delta < 0.0 || mftr.delta > 1.0) fail("delta: must be in [0,1]");
    if (mftr.mu < 1) fail("mu: must be a positive integer");
    if (sim_radius < 0.0) fail("sim_radius: must be >= 0 (0 = auto)");
    if (n_trials < 1) fail("n_trials: must be >= 1");
}

void apply_override(Scenario& s, std::string_view key, std::string_view value)
{
    if (key == "f") s.f = parse_double(key, value);
    else if (key == "eps_f") s.eps_f = parse_double(key, value);
    else if (key == "h_A") s.h_A = parse_double(key, value);
    else if (key == "h_U") s.h_U = parse_double(key, value);
    else if (key == "h_B") s.h_B = parse_double(key, value);
    else if (key == "R_B") s.R_B = parse_double(key, value);
    else if (key == "lambda_A") s.lambda_A = parse_double(key, value);
    else if (key == "lambda_B") s.lambda_B = parse_double(key, value);
    else if (key == "lambda_W") s.lambda_W = parse_double(key, value);
    else if (key == "mean_L_W") s.mean_L_W = parse_double(key, value);
    else if (key == "P_t_dBm") s.P_t_dBm = parse_double(key, value);
    else if (key == "N0_dBm") s.N0_dBm = parse_double(key, value);
    else if (key == "N_A") s.N_A = static_cast<int>(parse_long(key, value));
    else if (key == "N_U") s.N_U = static_cast<int>(parse_long(key, value));
    else if (key == "R_A") s.R_A = parse_double(key, value);
    else if (key == "sigma_theta_deg") s.sigma_theta_deg = parse_double(key, value);
    else if (key == "K") s.mftr.K = parse_double(key, value);
    else if (key == "m") s.mftr.m = parse_double(key, value);
    else if (key == "delta") s.mftr.delta = parse_double(key, value);
    else if (key == "mu") s.mftr.mu = static_cast<int>(parse_long(key, value));
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_long(key, value));
    else if (key == "sim_radius") s.sim_radius = parse_double(key, value);
    else if (key == "n_trials") s.n_trials = parse_long(key, value);
    else if (key == "wall_length_mode") {
        if (value == "fixed") s.wall_length_mode = WallLengthMode::Fixed;
        else if (value == "exponential") s.wall_length_mode = WallLengthMode::Exponential;
        else fail("wall_length_mode: expected 'fixed' or 'exponential'");
    }
    else fail("unknown scenario key '" + std::string(key) + "'");
}

Scenario load_scenario(std::string_view text)
{
    Scenario s;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail("parse error at line " + std::to_string(lineno) + ": expected key = value");
        apply_override(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

std::string serialize(const Scenario& s)
{
    std::ostringstream o;
    o.precision(17);
    o << "f = " << s.f << "\n"
      << "eps_f = " << s.eps_f << "\n"
      << "h_A = " << s.h_A << "\n"
      << "h_U = " << s.h_U << "\n"
      << "h_B = " << s.h_B << "\n"
      << "R_B = " << s.R_B << "\n"
      << "lambda_A = " << s.lambda_A << "\n"
      << "lambda_B = " << s.lambda_B << "\n"
      << "lambda_W = " << s.lambda_W << "\n"
      << "mean_L_W = " << s.mean_L_W << "\n"
      << "P_t_dBm = " << s.P_t_dBm << "\n"
      << "N0_dBm = " << s.N0_dBm << "\n"
      << "N_A = " << s.N_A << "\n"
      << "N_U = " << s.N_U << "\n"
      << "R_A = " << s.R_A << "\n"
      << "sigma_theta_deg = " << s.sigma_theta_deg << "\n"
      << "K = " << s.mftr.K << "\n"
      << "m = " << s.mftr.m << "\n"
      << "delta = " << s.mftr.delta << "\n"
      << "mu = " << s.mftr.mu << "\n"
      << "seed = " << s.seed << "\n"
      << "sim_radius = " << s.sim_radius << "\n"
      << "n_trials = " << s.n_trials << "\n"
      << "wall_length_mode = "
      << (s.wall_length_mode == WallLengthMode::Fixed ? "fixed" : "exponential") << "\n";
    return o.str();
}

DerivedConstants derive_constants(const Scenario& s)
{
    s.validate();
    DerivedConstants c{};
    c.dz = s.h_A - s.h_U;
    c.alpha = 2.0 * s.lambda_B * s.R_B * (s.h_B - s.h_U) / c.dz;
    c.eta = 2.0 * s.lambda_W * s.mean_L_W / M_PI;
    constexpr double light_speed = 3.0e8;
    c.xi = std::pow(light_speed / (4.0 * M_PI * s.f), 2);
    c.sigma2_half = 1.0 / (s.mftr.mu * (s.mftr.K + 1.0));
    c.G_A_max = M_PI * s.N_A * s.N_A;
    c.G_U_max = M_PI * s.N_U * s.N_U;
    c.G_max = c.G_A_max * c.G_U_max;
    c.phi_A = 2.0 * 0.886 / s.N_A;
    c.phi_U = 2.0 * 0.886 / s.N_U;
    c.phi_AP = std::atan2(c.dz, s.R_A);
    c.sigma_theta = s.sigma_theta_deg * M_PI / 180.0;
    double nsq = static_cast<double>(s.N_A) * s.N_A + static_cast<double>(s.N_U) * s.N_U;
    c.beta = c.sigma_theta > 0.0
                 ? 1.06 * 1.06 / (2.0 * c.sigma_theta * c.sigma_theta * nsq)
                 : std::numeric_limits<double>::infinity();
    c.P_t_lin = dbm_to_mw(s.P_t_dBm);
    c.N0_lin = dbm_to_mw(s.N0_dBm);
    return c;
}

double effective_sim_radius(const Scenario& s, const DerivedConstants& c)
{
    if (s.sim_radius > 0.0) return s.sim_radius;
    return std::max(30.0, 10.0 / c.blockage_rate());
}

} // namespace thzcov
