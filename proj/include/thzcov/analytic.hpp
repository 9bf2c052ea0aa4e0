#pragma once

#include <span>
#include <vector>

#include "thzcov/curve.hpp"
#include "thzcov/mftr.hpp"
#include "thzcov/scenario.hpp"
#include "thzcov/special.hpp"

namespace thzcov {

// Discretization knobs for the closed-form coverage evaluator.
struct QuadratureSpec {
    double series_tol = 1e-8;  // fading-series tail tolerance per evaluation
    int l_max_cap = 96;        // hard cap on Laplace-derivative order
    double d0_panel = 2.0;     // serving-distance quadrature panel width, m
    int d0_nodes = 12;         // Gauss-Legendre nodes per d0 panel
    double d0_max = 0.0;       // serving-distance cutoff, m; 0 = auto
    int hpe_nodes = 16;        // nodes for the pointing-loss integral
    int d_nodes = 16;          // nodes per interference-integral panel
    double d_int_cutoff = 0.0; // interference-integral cutoff, m; 0 = auto
    bool rho_with_j_mu = false; // evaluate the (j+mu)-scaled rho variant
};

// Closed-form coverage engine: conditional coverage from the fading-series
// expansion, the interference-plus-noise Laplace transform with closed-form
// high-order derivatives, and the outer (h_pe, d0) double quadrature.
class AnalyticEngine {
  public:
    explicit AnalyticEngine(const Scenario& s, QuadratureSpec q = {});

    const Scenario& scenario() const { return s_; }
    const DerivedConstants& constants() const { return c_; }
    const MftrModel& mftr() const { return mftr_; }
    const QuadratureSpec& quadrature() const { return q_; }
    double d0_cutoff() const { return d0_max_; }
    double interference_cutoff() const { return d_int_; }

    // L_{I+N0}(s | d0), in (0, 1].
    double laplace_interference(double s, double d0) const;

    // L and d^l L / ds^l for l = 0..l_max (unscaled derivatives).
    void laplace_derivatives(double s, double d0, int l_max, std::span<double> out) const;

    // Pr(SINR > gamma | h_pe, d0); gamma is a linear ratio.
    double conditional_coverage(double h_pe, double d0, double gamma_lin) const;

    // Full coverage probability at one linear threshold.
    double coverage_probability(double gamma_lin) const;

    // Coverage over a dB grid; worker count never changes the result.
    CoverageCurve coverage_curve(const std::vector<double>& gamma_db, int workers = 1) const;

  private:
    Scenario s_;
    DerivedConstants c_;
    MftrModel mftr_;
    QuadratureSpec q_;
    double d0_max_ = 0.0;
    double d_int_ = 0.0;
    int l_max_ = 0;
    std::vector<double> tail_;  // T_l = sum of fading-series weights with j+mu-1 >= l
    GaussLegendre gl_d_, gl_d0_, gl_h_;

    struct PlanNode {
        double wLambda;              // quadrature weight x LoS-AP intensity
        std::array<double, 4> a;     // effective power scale P_t xi G W(d) per gain level
        std::array<double, 4> pr;    // gain-level probabilities at this distance
    };
    struct Plan {
        std::vector<PlanNode> nodes;
    };

    Plan make_plan(double d0) const;

    // Scaled derivative terms C_l = [(-s)^l / l!] L^{(l)}(s | d0), l = 0..l_max.
    void scaled_terms(const Plan& plan, double s, int l_max, std::span<double> out) const;

    double conditional_coverage_plan(const Plan& plan, double h_pe, double d0,
                                     double gamma_lin) const;
    double rho_of(double h_pe, double d0, double gamma_lin) const;
    double coverage_given_d0(const Plan& plan, double d0, double gamma_lin) const;
};

} // namespace thzcov
