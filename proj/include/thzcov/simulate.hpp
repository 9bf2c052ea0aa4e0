#pragma once

#include <optional>
#include <random>
#include <vector>

#include "thzcov/antenna.hpp"
#include "thzcov/curve.hpp"
#include "thzcov/mftr.hpp"
#include "thzcov/scenario.hpp"

namespace thzcov {

enum class BlockageMode { Thinned, Geometric };

struct TrialResult {
    bool has_ap = false;       // false when no LoS AP exists in the region
    double d0 = 0.0;           // serving horizontal distance, m
    double h_pe = 1.0;         // realized combined pointing loss
    int n_los_aps = 0;
    double signal_mW = 0.0;
    double interference_mW = 0.0;
    double sinr = 0.0;         // linear ratio
};

struct SimOptions {
    BlockageMode blockage = BlockageMode::Thinned;
    PointingMode pointing = PointingMode::Exact;
    int workers = 1;
};

// One end-to-end realization: AP field, blockage, nearest-LoS association,
// pointing error, fading, interference, SINR.
TrialResult run_trial(const Scenario& s, const DerivedConstants& c, const MftrModel& mftr,
                      std::mt19937_64& rng, BlockageMode blockage, PointingMode pointing);

// Coverage over a shared-trial gamma grid with Wilson 95% intervals.
// Identical seed + scenario give identical output for any worker count.
CoverageCurve estimate_coverage(const Scenario& s, const std::vector<double>& gamma_db,
                                long n_trials, std::uint64_t seed, const SimOptions& opts,
                                std::vector<TrialResult>* trial_dump = nullptr);

// Interference-plus-noise power of one realization conditioned on the
// serving distance d0 (interferers beyond d0 only).
double sample_interference(const Scenario& s, const DerivedConstants& c, const MftrModel& mftr,
                           double d0, std::mt19937_64& rng);

} // namespace thzcov
