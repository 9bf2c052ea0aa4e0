#pragma once

#include <random>
#include <vector>

#include "thzcov/scenario.hpp"

namespace thzcov {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }

// LoS probability of a link with horizontal length d: exp(-(alpha+eta) d).
double los_probability(double d, const DerivedConstants& c);
double human_los_probability(double d, const DerivedConstants& c);
double wall_los_probability(double d, const DerivedConstants& c);

// Intensity of the LoS-thinned AP process: 2 pi lambda_A d exp(-(alpha+eta) d).
double los_intensity(double d, const DerivedConstants& c, const Scenario& s);

// Mean LoS-AP count within horizontal distance d (closed form of the
// intensity integral):
//   Xi(d) = 2 pi lambda_A / k^2 * (1 - e^{-k d} (1 + k d)),  k = alpha + eta.
double los_count_mean(double d, const DerivedConstants& c, const Scenario& s);

// Nearest-LoS-AP distance law: pdf and cdf of d0.
double nearest_los_pdf(double d0, const DerivedConstants& c, const Scenario& s);
double nearest_los_cdf(double d0, const DerivedConstants& c, const Scenario& s);

struct ApField {
    std::vector<Vec2> positions; // horizontal plane, typical UE at the origin
    double region_radius = 0.0;
};

struct Human {
    Vec2 center;
};

struct Wall {
    Vec2 center;
    double length = 0.0;
    bool along_y = false; // orientation 0 (x-axis) or pi/2 (y-axis)
};

// Explicit scene realization with a uniform grid index so LoS queries do
// not scan every obstacle.
class BlockageField {
  public:
    BlockageField(std::vector<Human> humans, std::vector<Wall> walls,
                  double region_radius, const Scenario& s);

    const std::vector<Human>& humans() const { return humans_; }
    const std::vector<Wall>& walls() const { return walls_; }
    double region_radius() const { return region_radius_; }

    // LoS test of the link from the UE at the origin to an AP at `ap`.
    // Humans block only the sub-segment where the link runs below h_B;
    // walls (full height) block anywhere along the ground projection.
    bool is_los(Vec2 ap, const Scenario& s, const DerivedConstants& c) const;

  private:
    std::vector<Human> humans_;
    std::vector<Wall> walls_;
    double region_radius_ = 0.0;
    double human_frac_ = 0.0; // (h_B - h_U) / (h_A - h_U)
    double rb_ = 0.0;

    double cell_ = 0.0;
    int ncell_ = 0;
    double origin_ = 0.0;
    std::vector<std::vector<int>> human_cells_;
    std::vector<std::vector<int>> wall_cells_;

    int cell_index(double x, double y) const;
    template <class Fn> bool visit_cells(Vec2 a, Vec2 b, double pad, Fn&& fn) const;
};

ApField sample_ap_field(const Scenario& s, std::mt19937_64& rng, double region_radius);
BlockageField sample_blockage_field(const Scenario& s, const DerivedConstants& c,
                                    std::mt19937_64& rng, double region_radius);

} // namespace thzcov
