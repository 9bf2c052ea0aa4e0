// Command-line surface of the coverage laboratory: scenario ingestion,
// engine selection, cross-validation, and figure-data reproduction.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "thzcov/analytic.hpp"
#include "thzcov/antenna.hpp"
#include "thzcov/curve.hpp"
#include "thzcov/geometry.hpp"
#include "thzcov/rng.hpp"
#include "thzcov/simulate.hpp"

namespace {

constexpr const char* kToolVersion = "thzcov 1.0.0";

using nlohmann::json;
using namespace thzcov;

struct CommonArgs {
    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string gamma_grid = "-10:40:2";
    long trials = 0; // 0 = scenario default
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
    std::string out;
    std::string format = "csv";
    std::string blockage = "thinned";
    std::string pointing = "exact";
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_seed)
{
    cmd->add_option("--scenario", a.scenario_path, "scenario file (flat key=value)");
    cmd->add_option("--set", a.overrides, "override a scenario key, key=value")->take_all();
    cmd->add_option("--gamma-grid", a.gamma_grid, "SINR threshold grid a:b:step in dB");
    cmd->add_option("--trials", a.trials, "Monte Carlo trial count (0 = scenario default)");
    auto* seed_opt = cmd->add_option_function<std::uint64_t>(
        "--seed", [&a](std::uint64_t v) { a.seed = v; a.seed_set = true; },
        "master RNG seed");
    if (needs_seed) seed_opt->required();
    cmd->add_option("--workers", a.workers, "worker thread count (never changes results)");
    cmd->add_option("--out", a.out, "output file path");
    cmd->add_option("--format", a.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--blockage", a.blockage, "blockage mode: thinned | geometric")
        ->check(CLI::IsMember({"thinned", "geometric"}));
    cmd->add_option("--pointing", a.pointing, "pointing model: exact | gaussian")
        ->check(CLI::IsMember({"exact", "gaussian"}));
}

Scenario resolve_scenario(const CommonArgs& a)
{
    Scenario s = a.scenario_path.empty() ? Scenario{} : load_scenario_file(a.scenario_path);
    for (const std::string& kv : a.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ScenarioError("--set expects key=value, got: " + kv);
        apply_override(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (a.seed_set) s.seed = a.seed;
    if (a.trials > 0) s.n_trials = a.trials;
    s.validate();
    return s;
}

SimOptions sim_options(const CommonArgs& a)
{
    SimOptions o;
    o.blockage = a.blockage == "thinned" ? BlockageMode::Thinned : BlockageMode::Geometric;
    o.pointing = a.pointing == "exact" ? PointingMode::Exact : PointingMode::GaussianApprox;
    o.workers = a.workers;
    return o;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

json manifest_json(const Scenario& s, const CommonArgs& a, const std::string& engine)
{
    json m;
    m["tool_version"] = kToolVersion;
    m["engine"] = engine;
    m["scenario"] = serialize(s);
    m["gamma_grid"] = a.gamma_grid;
    m["trials"] = s.n_trials;
    m["seed"] = s.seed;
    m["workers"] = a.workers;
    m["blockage"] = a.blockage;
    m["pointing"] = a.pointing;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    m["wall_clock_unix_s"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    return m;
}

void emit_curve(const CoverageCurve& curve, const Scenario& s, const CommonArgs& a,
                const std::string& engine)
{
    std::string payload = a.format == "json" ? curve_to_json(curve) : curve_to_csv(curve);
    if (a.out.empty()) {
        std::cout << payload;
        return;
    }
    write_file(a.out, payload);
    write_file(a.out + ".manifest.json", manifest_json(s, a, engine).dump(2) + "\n");
    std::cout << "wrote " << a.out << "\n";
}

int cmd_analytic(const CommonArgs& a)
{
    Scenario s = resolve_scenario(a);
    AnalyticEngine engine(s);
    CoverageCurve curve = engine.coverage_curve(parse_gamma_grid(a.gamma_grid), a.workers);
    emit_curve(curve, s, a, "analytic");
    return 0;
}

int cmd_simulate(const CommonArgs& a, const std::string& dump_trials)
{
    Scenario s = resolve_scenario(a);
    std::vector<TrialResult> dump;
    CoverageCurve curve = estimate_coverage(s, parse_gamma_grid(a.gamma_grid), s.n_trials,
                                            s.seed, sim_options(a),
                                            dump_trials.empty() ? nullptr : &dump);
    if (!dump_trials.empty()) {
        std::string csv = "trial,d0,n_los_aps,h_pe,signal_mW,interference_mW,sinr_dB\n";
        char buf[256];
        for (std::size_t i = 0; i < dump.size(); ++i) {
            const TrialResult& t = dump[i];
            if (t.has_ap)
                std::snprintf(buf, sizeof(buf), "%zu,%.6g,%d,%.6g,%.6g,%.6g,%.6g\n", i, t.d0,
                              t.n_los_aps, t.h_pe, t.signal_mW, t.interference_mW,
                              10.0 * std::log10(t.sinr));
            else
                std::snprintf(buf, sizeof(buf), "%zu,,0,,,,\n", i);
            csv += buf;
        }
        write_file(dump_trials, csv);
    }
    emit_curve(curve, s, a, "monte-carlo");
    return 0;
}

int cmd_compare(const CommonArgs& a, double tol)
{
    Scenario s = resolve_scenario(a);
    std::vector<double> grid = parse_gamma_grid(a.gamma_grid);
    AnalyticEngine engine(s);
    CoverageCurve ana = engine.coverage_curve(grid, a.workers);
    CoverageCurve sim = estimate_coverage(s, grid, s.n_trials, s.seed, sim_options(a));

    json rep;
    rep["tolerance"] = tol;
    rep["manifest"] = manifest_json(s, a, "compare");
    bool all_pass = true;
    double max_diff = 0.0;
    json points = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double diff = std::abs(ana.values[i] - sim.values[i]);
        max_diff = std::max(max_diff, diff);
        bool pass = diff <= tol;
        all_pass = all_pass && pass;
        points.push_back({{"gamma_db", grid[i]},
                          {"analytic", ana.values[i]},
                          {"simulated", sim.values[i]},
                          {"ci_halfwidth", sim.ci_halfwidth[i]},
                          {"abs_diff", diff},
                          {"pass", pass}});
    }
    rep["points"] = points;
    rep["max_abs_diff"] = max_diff;
    rep["pass"] = all_pass;
    std::string payload = rep.dump(2) + "\n";
    if (a.out.empty()) std::cout << payload;
    else { write_file(a.out, payload); std::cout << "wrote " << a.out << "\n"; }
    std::cout << (all_pass ? "PASS" : "FAIL") << " max |analytic - simulated| = " << max_diff
              << " (tol " << tol << ")\n";
    return all_pass ? 0 : 1;
}

int cmd_dump_scene(const CommonArgs& a)
{
    Scenario s = resolve_scenario(a);
    DerivedConstants c = derive_constants(s);
    std::mt19937_64 rng = make_stream(s.seed, 0);
    double radius = effective_sim_radius(s, c);
    BlockageField field = sample_blockage_field(s, c, rng, radius);
    json scene;
    scene["region_radius_m"] = radius;
    json humans = json::array();
    for (const Human& h : field.humans()) humans.push_back({h.center.x, h.center.y});
    json walls = json::array();
    for (const Wall& w : field.walls())
        walls.push_back({{"center", {w.center.x, w.center.y}},
                         {"length", w.length},
                         {"orientation", w.along_y ? "y" : "x"}});
    scene["humans"] = humans;
    scene["walls"] = walls;
    scene["human_radius_m"] = s.R_B;
    std::string payload = scene.dump(2) + "\n";
    if (a.out.empty()) std::cout << payload;
    else { write_file(a.out, payload); std::cout << "wrote " << a.out << "\n"; }
    return 0;
}

// Fig-style datasets: pointing-loss PDF, coverage vs threshold, coverage vs N_A.
int cmd_figure(const CommonArgs& a, const std::string& id, const std::string& out_dir)
{
    Scenario base = resolve_scenario(a);
    auto path = [&](const std::string& name) { return out_dir + "/" + name; };

    if (id == "hpe-pdf") {
        const long draws = base.n_trials;
        const int bins = 50;
        std::string csv = "h_pe,pdf_analytic,pdf_empirical,n_a\n";
        char buf[160];
        for (int na : {16, 32}) {
            Scenario s = base;
            s.N_A = na;
            if (s.sigma_theta_deg == 0.0) s.sigma_theta_deg = 1.5;
            DerivedConstants c = derive_constants(s);
            PointingModel pm = PointingModel::from(s, c, PointingMode::Exact);
            std::vector<long> hist(bins, 0);
            for (long t = 0; t < draws; ++t) {
                std::mt19937_64 rng = make_stream(s.seed, static_cast<std::uint64_t>(t));
                double h = sample_pointing_loss(pm, rng);
                int b = std::min(bins - 1, static_cast<int>(h * bins));
                ++hist[static_cast<std::size_t>(b)];
            }
            PointingModel gauss = pm;
            gauss.mode = PointingMode::GaussianApprox;
            for (int b = 0; b < bins; ++b) {
                double mid = (b + 0.5) / bins;
                double emp = static_cast<double>(hist[static_cast<std::size_t>(b)]) * bins / draws;
                std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%d\n", mid,
                              pointing_loss_pdf(mid, gauss), emp, na);
                csv += buf;
            }
        }
        write_file(path("hpe_pdf.csv"), csv);
        write_file(path("hpe_pdf.csv.manifest.json"),
                   manifest_json(base, a, "figure:hpe-pdf").dump(2) + "\n");
        std::cout << "wrote " << path("hpe_pdf.csv") << "\n";
        return 0;
    }

    if (id == "coverage-vs-threshold") {
        std::vector<double> grid = parse_gamma_grid(a.gamma_grid);
        std::string csv = "gamma_db,pc_analytic,pc_sim,ci_halfwidth,sigma_theta_deg,n_a,n_u\n";
        char buf[200];
        const std::pair<int, int> configs[] = {{16, 8}, {32, 4}};
        for (double sigma : {0.0, 0.5, 1.5}) {
            for (auto [na, nu] : configs) {
                Scenario s = base;
                s.sigma_theta_deg = sigma;
                s.N_A = na;
                s.N_U = nu;
                AnalyticEngine engine(s);
                CoverageCurve ana = engine.coverage_curve(grid, a.workers);
                CoverageCurve sim = estimate_coverage(s, grid, s.n_trials, s.seed, sim_options(a));
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%.6g,%.6g,%d,%d\n", grid[i],
                                  ana.values[i], sim.values[i], sim.ci_halfwidth[i], sigma, na, nu);
                    csv += buf;
                }
            }
        }
        write_file(path("coverage_vs_threshold.csv"), csv);
        write_file(path("coverage_vs_threshold.csv.manifest.json"),
                   manifest_json(base, a, "figure:coverage-vs-threshold").dump(2) + "\n");
        std::cout << "wrote " << path("coverage_vs_threshold.csv") << "\n";
        return 0;
    }

    if (id == "coverage-vs-na") {
        const std::vector<double> grid = {30.0};
        std::string csv = "n_a,pc_sim,ci_halfwidth,sigma_theta_deg\n";
        std::string summary;
        char buf[160];
        for (double sigma : {0.0, 0.5, 1.5}) {
            std::vector<double> pc;
            std::vector<int> nas = {8, 16, 24, 32, 40, 48, 56, 64};
            for (int na : nas) {
                Scenario s = base;
                s.sigma_theta_deg = sigma;
                s.N_A = na;
                CoverageCurve sim = estimate_coverage(s, grid, s.n_trials, s.seed, sim_options(a));
                pc.push_back(sim.values[0]);
                std::snprintf(buf, sizeof(buf), "%d,%.6g,%.6g,%.6g\n", na, sim.values[0],
                              sim.ci_halfwidth[0], sigma);
                csv += buf;
            }
            if (sigma > 0.0) {
                std::size_t arg = 0;
                for (std::size_t i = 1; i < pc.size(); ++i)
                    if (pc[i] > pc[arg]) arg = i;
                std::snprintf(buf, sizeof(buf), "# unimodal argmax sigma=%.3g deg: N_A=%d\n",
                              sigma, nas[arg]);
                summary += buf;
            }
        }
        write_file(path("coverage_vs_na.csv"), csv + summary);
        write_file(path("coverage_vs_na.csv.manifest.json"),
                   manifest_json(base, a, "figure:coverage-vs-na").dump(2) + "\n");
        std::cout << "wrote " << path("coverage_vs_na.csv") << "\n";
        return 0;
    }

    std::cerr << "unknown figure id: " << id << "\n";
    return 2;
}

// Light self-check suite: the fast subset of the property tests.
int cmd_validate(const CommonArgs& a)
{
    Scenario s = resolve_scenario(a);
    DerivedConstants c = derive_constants(s);
    MftrModel mftr = MftrModel::build(s.mftr);
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    double wsum = 0.0;
    for (double w : mftr.weights()) wsum += w;
    check("fading series normalization", std::abs(wsum - 1.0) < 1e-8);

    std::mt19937_64 rng = make_stream(s.seed, 0);
    double mean = 0.0;
    const long n = 200000;
    for (long i = 0; i < n; ++i) mean += mftr.sample(rng);
    mean /= static_cast<double>(n);
    check("fading sample mean ~ 1", std::abs(mean - 1.0) < 0.02);

    AnalyticEngine engine(s);
    check("Laplace transform at s=0 equals 1",
          std::abs(engine.laplace_interference(0.0, 2.0) - 1.0) < 1e-9);

    double p_low = engine.coverage_probability(db_to_lin(-60.0));
    check("coverage at -60 dB ~ 1", p_low > 0.999);

    double p1 = engine.coverage_probability(db_to_lin(10.0));
    double p2 = engine.coverage_probability(db_to_lin(30.0));
    check("coverage nonincreasing in threshold", p1 >= p2);

    std::cout << (failures == 0 ? "validate: all checks passed\n"
                                : "validate: FAILURES present\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dual-engine THz indoor coverage laboratory"};
    app.require_subcommand(1);

    CommonArgs ana_args, sim_args, cmp_args, fig_args, val_args, scn_args;
    std::string dump_trials, figure_id, fig_out_dir = ".";
    double cmp_tol = 0.03;

    add_common(app.add_subcommand("analytic", "closed-form coverage curve"), ana_args, false);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo coverage curve");
    add_common(sim, sim_args, true);
    sim->add_option("--dump-trials", dump_trials, "write per-trial CSV to this path");

    auto* cmp = app.add_subcommand("compare", "analytic vs Monte Carlo cross-validation");
    add_common(cmp, cmp_args, true);
    cmp->add_option("--tol", cmp_tol, "max allowed |analytic - simulated| per point");

    auto* fig = app.add_subcommand("figure", "reproduce a figure dataset");
    fig->add_option("id", figure_id, "hpe-pdf | coverage-vs-threshold | coverage-vs-na")
        ->required()
        ->check(CLI::IsMember({"hpe-pdf", "coverage-vs-threshold", "coverage-vs-na"}));
    add_common(fig, fig_args, false);
    fig->add_option("--out-dir", fig_out_dir, "directory for dataset files");

    add_common(app.add_subcommand("validate", "run the quick property suite"), val_args, false);
    add_common(app.add_subcommand("dump-scene", "emit one blockage realization as JSON"),
               scn_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("analytic")) return cmd_analytic(ana_args);
        if (app.got_subcommand("simulate")) return cmd_simulate(sim_args, dump_trials);
        if (app.got_subcommand("compare")) return cmd_compare(cmp_args, cmp_tol);
        if (app.got_subcommand("figure")) return cmd_figure(fig_args, figure_id, fig_out_dir);
        if (app.got_subcommand("validate")) return cmd_validate(val_args);
        if (app.got_subcommand("dump-scene")) return cmd_dump_scene(scn_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
