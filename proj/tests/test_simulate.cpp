#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "thzcov/curve.hpp"
#include "thzcov/geometry.hpp"
#include "thzcov/rng.hpp"
#include "thzcov/simulate.hpp"
#include "thzcov/special.hpp"

using namespace thzcov;

TEST_SUITE("simulate") {

TEST_CASE("trial bookkeeping is internally consistent")
{
    Scenario s;
    const DerivedConstants c = derive_constants(s);
    const MftrModel mftr = MftrModel::build(s.mftr);
    int with_ap = 0;
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng = make_stream(33, static_cast<std::uint64_t>(i));
        TrialResult tr = run_trial(s, c, mftr, rng, BlockageMode::Thinned, PointingMode::Exact);
        if (!tr.has_ap) continue;
        ++with_ap;
        CHECK(tr.d0 > 0.0);
        CHECK(tr.n_los_aps >= 1);
        CHECK(tr.h_pe > 0.0);
        CHECK(tr.h_pe <= 1.0);
        CHECK(tr.signal_mW > 0.0);
        CHECK(tr.interference_mW >= 0.0);
        CHECK(tr.sinr ==
              doctest::Approx(tr.signal_mW / (tr.interference_mW + c.N0_lin)).epsilon(1e-12));
    }
    CHECK(with_ap == 200); // a LoS AP is essentially always present at these densities
}

TEST_CASE("perfect alignment pins the pointing loss at one")
{
    Scenario s;
    s.sigma_theta_deg = 0.0;
    const DerivedConstants c = derive_constants(s);
    const MftrModel mftr = MftrModel::build(s.mftr);
    std::mt19937_64 rng = make_stream(34, 0);
    TrialResult tr = run_trial(s, c, mftr, rng, BlockageMode::Thinned, PointingMode::Exact);
    CHECK(tr.h_pe == 1.0);
}

TEST_CASE("serving distance follows the nearest-LoS law (thinned)")
{
    Scenario s;
    const DerivedConstants c = derive_constants(s);
    const MftrModel mftr = MftrModel::build(s.mftr);
    const long n = 20000;
    std::vector<double> d0;
    d0.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        std::mt19937_64 rng = make_stream(35, static_cast<std::uint64_t>(i));
        TrialResult tr = run_trial(s, c, mftr, rng, BlockageMode::Thinned, PointingMode::Exact);
        if (tr.has_ap) d0.push_back(tr.d0);
    }
    std::sort(d0.begin(), d0.end());
    double ks = ks_statistic(d0, [&](double x) { return nearest_los_cdf(x, c, s); });
    CHECK(ks < 0.015);
}

TEST_CASE("seed and worker count give bit-identical curves")
{
    Scenario s;
    const std::vector<double> grid = {0.0, 10.0, 20.0, 30.0};
    SimOptions one, four;
    four.workers = 4;
    CoverageCurve a = estimate_coverage(s, grid, 5000, 99, one);
    CoverageCurve b = estimate_coverage(s, grid, 5000, 99, four);
    CoverageCurve other = estimate_coverage(s, grid, 5000, 100, one);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);
        CHECK(a.ci_halfwidth[i] == b.ci_halfwidth[i]);
    }
    CHECK(curve_to_csv(a) == curve_to_csv(b));
    CHECK(curve_to_csv(a) != curve_to_csv(other)); // a different seed moves the estimate
}

TEST_CASE("confidence intervals shrink like 1/sqrt(n)")
{
    Scenario s;
    SimOptions opt;
    opt.workers = 4;
    CoverageCurve small = estimate_coverage(s, {20.0}, 10000, 7, opt);
    CoverageCurve large = estimate_coverage(s, {20.0}, 40000, 7, opt);
    double ratio = small.ci_halfwidth[0] / large.ci_halfwidth[0];
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("trials without a LoS AP count as uncovered")
{
    Scenario s;
    s.lambda_A = 1e-4; // nearly empty region
    s.sim_radius = 10.0;
    CoverageCurve curve = estimate_coverage(s, {-100.0}, 5000, 11, SimOptions{});
    // coverage is capped by the LoS-AP availability, which is tiny here
    CHECK(curve.values[0] < 0.1);
    CHECK(curve.values[0] > 0.0);
}

TEST_CASE("geometric and thinned blockage agree on coverage")
{
    Scenario s;
    s.sim_radius = 30.0; // same truncated region for both modes
    const std::vector<double> grid = {0.0, 15.0, 30.0};
    SimOptions thin, geo;
    thin.workers = geo.workers = 4;
    geo.blockage = BlockageMode::Geometric;
    CoverageCurve a = estimate_coverage(s, grid, 10000, 13, thin);
    CoverageCurve b = estimate_coverage(s, grid, 10000, 13, geo);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(a.values[i] - b.values[i]) < 0.04);
}

TEST_CASE("gaussian-approx pointing stays close to the exact pattern")
{
    Scenario s;
    const std::vector<double> grid = {10.0, 25.0};
    SimOptions exact, gauss;
    exact.workers = gauss.workers = 4;
    gauss.pointing = PointingMode::GaussianApprox;
    CoverageCurve a = estimate_coverage(s, grid, 20000, 17, exact);
    CoverageCurve b = estimate_coverage(s, grid, 20000, 17, gauss);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(a.values[i] - b.values[i]) < 0.03);
}

TEST_CASE("gamma grid parsing and csv shape")
{
    std::vector<double> g = parse_gamma_grid("-10:40:2");
    CHECK(g.size() == 26);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == 40.0);
    CHECK_THROWS(parse_gamma_grid("10:0:2"));
    CHECK_THROWS(parse_gamma_grid("junk"));

    Scenario s;
    CoverageCurve c = estimate_coverage(s, {0.0, 10.0}, 2000, 3, SimOptions{});
    std::string csv = curve_to_csv(c);
    CHECK(csv.rfind("gamma_db,coverage,ci_halfwidth,engine\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

} // TEST_SUITE
