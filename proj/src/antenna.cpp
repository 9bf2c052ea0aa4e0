#include "thzcov/antenna.hpp"

#include <cmath>
#include <limits>

namespace thzcov {

PointingModel PointingModel::from(const Scenario& s, const DerivedConstants& c, PointingMode mode)
{
    PointingModel m;
    m.sigma_theta = c.sigma_theta;
    m.N_A = s.N_A;
    m.N_U = s.N_U;
    m.beta = c.beta;
    m.omega_A = 1.06 / s.N_A;
    m.omega_U = 1.06 / s.N_U;
    m.mode = mode;
    return m;
}

namespace {

// sin(N x) / (N sin x) with the x -> 0 limit.
inline double dirichlet_ratio(double x, int N)
{
    double s = std::sin(x);
    if (std::abs(s) < 1e-12) {
        // near a zero of sin(x): sin(Nx)/(N sin x) -> cos(N x)/cos(x) -> +-1
        return std::cos(N * x) / std::cos(x);
    }
    return std::sin(N * x) / (N * s);
}

} // namespace

double array_factor(double theta_V, double theta_H, int N)
{
    // direction cosines; for the small angles of interest u = sin(theta_H),
    // v = sin(theta_V) is numerically identical to the exact elevation/
    // azimuth composition
    double u = std::sin(theta_H);
    double v = std::sin(theta_V);
    double fu = dirichlet_ratio(0.5 * M_PI * u, N);
    double fv = dirichlet_ratio(0.5 * M_PI * v, N);
    double g = fu * fv;
    return g * g;
}

double pointing_loss_pdf(double h_pe, const PointingModel& model)
{
    if (!std::isfinite(model.beta)) throw ScenarioError("degenerate: H_pe == 1");
    if (!(h_pe > 0.0 && h_pe <= 1.0)) throw ScenarioError("pointing_loss_pdf: h_pe must be in (0,1]");
    return model.beta * std::pow(h_pe, model.beta - 1.0);
}

double pointing_loss_cdf(double h_pe, const PointingModel& model)
{
    if (!std::isfinite(model.beta)) throw ScenarioError("degenerate: H_pe == 1");
    if (h_pe <= 0.0) return 0.0;
    if (h_pe >= 1.0) return 1.0;
    return std::pow(h_pe, model.beta);
}

double sample_pointing_loss(const PointingModel& model, std::mt19937_64& rng)
{
    if (model.sigma_theta == 0.0) return 1.0;
    std::normal_distribution<double> gauss(0.0, model.sigma_theta);
    if (model.mode == PointingMode::GaussianApprox) {
        double tv = gauss(rng), th = gauss(rng);
        double t2 = tv * tv + th * th;
        double nsq = static_cast<double>(model.N_A) * model.N_A +
                     static_cast<double>(model.N_U) * model.N_U;
        return std::exp(-t2 * nsq / (1.06 * 1.06));
    }
    // exact array factor with the same estimate error applied at both ends
    double tv = gauss(rng), th = gauss(rng);
    return array_factor(tv, th, model.N_A) * array_factor(tv, th, model.N_U);
}

double mean_effective_gain(const PointingModel& model)
{
    double gmax = M_PI * M_PI * static_cast<double>(model.N_A) * model.N_A *
                  static_cast<double>(model.N_U) * model.N_U;
    if (!std::isfinite(model.beta)) return gmax;
    return gmax * model.beta / (model.beta + 1.0);
}

double side_lobe_gain(int N)
{
    if (N < 2) throw ScenarioError("side_lobe_gain: N must be >= 2");
    double half = 0.886 / N; // phi_{q,V}/2 = phi_{q,H}/2
    double t = std::tan(half);
    double a = std::asin(t * t);
    double num = M_PI - static_cast<double>(N) * N * M_PI * a;
    if (num <= 0.0) throw ScenarioError("cone model invalid for N");
    return num / (M_PI - a);
}

double max_ue_vertical_range(double d0, const DerivedConstants& c)
{
    double inner = std::atan2(c.dz, d0) - 0.5 * c.phi_U;
    if (inner <= 0.0) return std::numeric_limits<double>::infinity();
    return c.dz / std::tan(inner);
}

GainPmf interferer_gain_pmf(double d_i, double d0, const DerivedConstants& c,
                            const Scenario& s)
{
    if (!(d0 > 0.0) || d_i < d0) throw ScenarioError("interferer_gain_pmf: require d_i >= d0 > 0");
    const double p_AH = c.phi_A / (2.0 * M_PI);
    const double p_AV = std::min(c.phi_A / (0.5 * M_PI - c.phi_AP), 1.0);
    const double p_A = p_AH * p_AV;
    const double p_UH = c.phi_U / (2.0 * M_PI);
    const double p_UV = d_i <= max_ue_vertical_range(d0, c) ? 1.0 : 0.0;
    const double p_U = p_UH * p_UV;

    const double gAm = c.G_A_max, gUm = c.G_U_max;
    const double gAs = side_lobe_gain(s.N_A), gUs = side_lobe_gain(s.N_U);

    GainPmf pmf;
    pmf.gain = {gAm * gUm, gAm * gUs, gAs * gUm, gAs * gUs};
    pmf.prob = {p_A * p_U, p_A * (1.0 - p_U), (1.0 - p_A) * p_U, (1.0 - p_A) * (1.0 - p_U)};
    return pmf;
}

} // namespace thzcov
