#include "thzcov/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "thzcov/channel.hpp"
#include "thzcov/geometry.hpp"
#include "thzcov/parallel.hpp"
#include "thzcov/rng.hpp"

namespace thzcov {

namespace {

// LoS AP horizontal distances, ascending.
std::vector<double> los_distances(const Scenario& s, const DerivedConstants& c,
                                  std::mt19937_64& rng, BlockageMode blockage,
                                  double region_radius)
{
    std::vector<double> dist;
    if (blockage == BlockageMode::Thinned) {
        // Bernoulli thinning only needs AP distances; skip the azimuths.
        const double mean = s.lambda_A * M_PI * region_radius * region_radius;
        std::poisson_distribution<long> count(mean);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const long n = count(rng);
        dist.reserve(static_cast<std::size_t>(n) / 8 + 4);
        for (long i = 0; i < n; ++i) {
            double d = region_radius * std::sqrt(uni(rng));
            if (uni(rng) < los_probability(d, c)) dist.push_back(d);
        }
    } else {
        ApField aps = sample_ap_field(s, rng, region_radius);
        dist.reserve(aps.positions.size() / 8 + 4);
        BlockageField field = sample_blockage_field(s, c, rng, region_radius);
        for (const Vec2& p : aps.positions)
            if (field.is_los(p, s, c)) dist.push_back(norm(p));
    }
    std::sort(dist.begin(), dist.end());
    return dist;
}

double interferer_power(const Scenario& s, const DerivedConstants& c, const MftrModel& mftr,
                        double d_i, double rmax_ue, double p_AV, double p_AH, double p_UH,
                        double gAs, double gUs, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const bool ap_main = uni(rng) < p_AV && uni(rng) < p_AH;
    const bool ue_main = uni(rng) < p_UH && d_i <= rmax_ue;
    const double g = (ap_main ? c.G_A_max : gAs) * (ue_main ? c.G_U_max : gUs);
    return c.P_t_lin * c.xi * g * path_w(d_i, s.eps_f, c.dz) * mftr.sample(rng);
}

} // namespace

TrialResult run_trial(const Scenario& s, const DerivedConstants& c, const MftrModel& mftr,
                      std::mt19937_64& rng, BlockageMode blockage, PointingMode pointing)
{
    const double radius = effective_sim_radius(s, c);
    std::vector<double> dist = los_distances(s, c, rng, blockage, radius);

    TrialResult tr;
    tr.n_los_aps = static_cast<int>(dist.size());
    if (dist.empty()) return tr;

    tr.has_ap = true;
    tr.d0 = dist.front();

    PointingModel pm = PointingModel::from(s, c, pointing);
    tr.h_pe = sample_pointing_loss(pm, rng);
    tr.signal_mW = c.P_t_lin * c.xi * c.G_max * tr.h_pe * path_w(tr.d0, s.eps_f, c.dz) *
                   mftr.sample(rng);

    const double rmax_ue = max_ue_vertical_range(tr.d0, c);
    const double p_AH = c.phi_A / (2.0 * M_PI);
    const double p_AV = std::min(c.phi_A / (0.5 * M_PI - c.phi_AP), 1.0);
    const double p_UH = c.phi_U / (2.0 * M_PI);
    const double gAs = side_lobe_gain(s.N_A);
    const double gUs = side_lobe_gain(s.N_U);

    double interference = 0.0;
    for (std::size_t i = 1; i < dist.size(); ++i)
        interference += interferer_power(s, c, mftr, dist[i], rmax_ue, p_AV, p_AH, p_UH,
                                         gAs, gUs, rng);
    tr.interference_mW = interference;
    tr.sinr = tr.signal_mW / (interference + c.N0_lin);
    return tr;
}

double sample_interference(const Scenario& s, const DerivedConstants& c, const MftrModel& mftr,
                           double d0, std::mt19937_64& rng)
{
    const double radius = effective_sim_radius(s, c);
    std::vector<double> dist = los_distances(s, c, rng, BlockageMode::Thinned, radius);

    const double rmax_ue = max_ue_vertical_range(d0, c);
    const double p_AH = c.phi_A / (2.0 * M_PI);
    const double p_AV = std::min(c.phi_A / (0.5 * M_PI - c.phi_AP), 1.0);
    const double p_UH = c.phi_U / (2.0 * M_PI);
    const double gAs = side_lobe_gain(s.N_A);
    const double gUs = side_lobe_gain(s.N_U);

    double interference = 0.0;
    for (double d : dist)
        if (d > d0)
            interference += interferer_power(s, c, mftr, d, rmax_ue, p_AV, p_AH, p_UH,
                                             gAs, gUs, rng);
    return interference + c.N0_lin;
}

CoverageCurve estimate_coverage(const Scenario& s, const std::vector<double>& gamma_db,
                                long n_trials, std::uint64_t seed, const SimOptions& opts,
                                std::vector<TrialResult>* trial_dump)
{
    if (n_trials < 1) throw ScenarioError("estimate_coverage: n_trials must be >= 1");
    const DerivedConstants c = derive_constants(s);
    const MftrModel mftr = MftrModel::build(s.mftr);

    std::vector<double> sinr(static_cast<std::size_t>(n_trials), -1.0);
    if (trial_dump) trial_dump->assign(static_cast<std::size_t>(n_trials), {});

    const long chunk = 64;
    const long n_chunks = (n_trials + chunk - 1) / chunk;
    parallel_for(n_chunks, opts.workers, [&](long ci) {
        const long lo = ci * chunk;
        const long hi = std::min(lo + chunk, n_trials);
        for (long t = lo; t < hi; ++t) {
            std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(t));
            TrialResult tr = run_trial(s, c, mftr, rng, opts.blockage, opts.pointing);
            sinr[static_cast<std::size_t>(t)] = tr.has_ap ? tr.sinr : -1.0;
            if (trial_dump) (*trial_dump)[static_cast<std::size_t>(t)] = tr;
        }
    });

    CoverageCurve curve;
    curve.provenance = "monte-carlo";
    curve.gamma_db = gamma_db;
    const double n = static_cast<double>(n_trials);
    const double z = 1.959963984540054; // 95%
    for (double g_db : gamma_db) {
        const double g = db_to_lin(g_db);
        long covered = 0;
        for (double v : sinr)
            if (v > g) ++covered;
        const double p = static_cast<double>(covered) / n;
        curve.values.push_back(p);
        const double hw = z / (1.0 + z * z / n) *
                          std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
        curve.ci_halfwidth.push_back(hw);
    }

    curve.metadata["trials"] = std::to_string(n_trials);
    curve.metadata["seed"] = std::to_string(seed);
    curve.metadata["blockage"] = opts.blockage == BlockageMode::Thinned ? "thinned" : "geometric";
    curve.metadata["pointing"] = opts.pointing == PointingMode::Exact ? "exact" : "gaussian";
    curve.metadata["sim_radius_m"] = std::to_string(effective_sim_radius(s, c));
    curve.metadata["interferer_gains"] = "probabilistic-pmf";
    return curve;
}

} // namespace thzcov
