#pragma once

#include <array>
#include <random>

#include "thzcov/scenario.hpp"

namespace thzcov {

enum class PointingMode { Exact, GaussianApprox };

struct PointingModel {
    double sigma_theta = 0.0; // rad
    int N_A = 16, N_U = 4;
    double beta = 0.0;        // +inf when sigma_theta = 0
    double omega_A = 0.0;     // Gaussian beam width 1.06/N_A
    double omega_U = 0.0;
    PointingMode mode = PointingMode::Exact;

    static PointingModel from(const Scenario& s, const DerivedConstants& c, PointingMode mode);
};

// Planar-array factor of an N x N half-wavelength array, evaluated at the
// per-axis offsets from boresight. Equals 1 at (0, 0); removable
// singularities are handled by their limits.
double array_factor(double theta_V, double theta_H, int N);

// Power-law loss density f(h) = beta h^(beta-1) on (0, 1].
// Throws ScenarioError when sigma_theta = 0 (H_pe is then identically 1).
double pointing_loss_pdf(double h_pe, const PointingModel& model);
double pointing_loss_cdf(double h_pe, const PointingModel& model);

// Combined AP+UE pointing loss for one shared angle-estimate error.
double sample_pointing_loss(const PointingModel& model, std::mt19937_64& rng);

// Mean combined effective gain: pi^2 N_A^2 N_U^2 * beta / (beta + 1).
double mean_effective_gain(const PointingModel& model);

// Cone-model side-lobe gain; throws when the model breaks (nonpositive
// numerator for very large N).
double side_lobe_gain(int N);

struct GainPmf {
    std::array<double, 4> gain{};
    std::array<double, 4> prob{};
};

// Maximum horizontal distance covered by the UE's vertical beam when the
// UE points at its serving AP at distance d0; +inf when the lower beam
// edge tilts to or above horizontal.
double max_ue_vertical_range(double d0, const DerivedConstants& c);

// Four-point interferer gain distribution for an interferer at d_i given
// serving distance d0.
GainPmf interferer_gain_pmf(double d_i, double d0, const DerivedConstants& c,
                            const Scenario& s);

} // namespace thzcov
