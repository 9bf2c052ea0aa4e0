#include "thzcov/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "thzcov/antenna.hpp"
#include "thzcov/channel.hpp"
#include "thzcov/geometry.hpp"
#include "thzcov/parallel.hpp"

namespace thzcov {

namespace {
constexpr double kLogTiny = -745.0; // below this exp() underflows to 0
constexpr double kTermTiny = 1e-18;
} // namespace

AnalyticEngine::AnalyticEngine(const Scenario& s, QuadratureSpec q)
    : s_(s), c_(derive_constants(s)), mftr_(MftrModel::build(s.mftr)), q_(q)
{
    const auto& w = mftr_.weights();

    // retain fading-series terms until the weight tail drops below tol
    double cum = 0.0;
    int j_eff = mftr_.j_count() - 1;
    for (int j = 0; j < mftr_.j_count(); ++j) {
        cum += w[static_cast<std::size_t>(j)];
        if (1.0 - cum <= q_.series_tol) { j_eff = j; break; }
    }
    l_max_ = std::min(j_eff + s_.mftr.mu - 1, q_.l_max_cap);

    // T_l = sum of weights of terms whose inner sum reaches order l
    std::vector<double> suffix(w.size() + 1, 0.0);
    for (int j = mftr_.j_count() - 1; j >= 0; --j)
        suffix[static_cast<std::size_t>(j)] =
            suffix[static_cast<std::size_t>(j) + 1] + w[static_cast<std::size_t>(j)];
    tail_.resize(static_cast<std::size_t>(l_max_) + 1);
    for (int l = 0; l <= l_max_; ++l) {
        int jmin = std::max(0, l - s_.mftr.mu + 1);
        tail_[static_cast<std::size_t>(l)] =
            jmin < mftr_.j_count() ? std::min(1.0, suffix[static_cast<std::size_t>(jmin)]) : 0.0;
    }

    // serving-distance cutoff: nearest-LoS-AP mass beyond it is < 1e-12
    if (q_.d0_max > 0.0) {
        d0_max_ = q_.d0_max;
    } else {
        double d = q_.d0_panel;
        while (std::exp(-los_count_mean(d, c_, s_)) > 1e-12 && d < 1e4) d += 0.5;
        d0_max_ = d;
    }

    // interference cutoff: intensity integrand below 1e-8 of its peak
    if (q_.d_int_cutoff > 0.0) {
        d_int_ = q_.d_int_cutoff;
    } else {
        const double k = c_.blockage_rate();
        const double peak = std::exp(-1.0) / k;
        double d = 1.0 / k;
        while (d * std::exp(-k * d) > 1e-8 * peak) d += 2.0;
        d_int_ = d;
    }

    gl_d_ = gauss_legendre(q_.d_nodes);
    gl_d0_ = gauss_legendre(q_.d0_nodes);
    gl_h_ = gauss_legendre(q_.hpe_nodes);
}

AnalyticEngine::Plan AnalyticEngine::make_plan(double d0) const
{
    std::vector<double> bp;
    bp.push_back(d0);
    const double rmax = max_ue_vertical_range(std::max(d0, 1e-9), c_);
    if (rmax > d0 && rmax < d_int_) bp.push_back(rmax);
    for (double step : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0})
        if (d0 + step < d_int_) bp.push_back(d0 + step);
    for (double fixed : {30.0, 45.0, 65.0, 90.0, 120.0, 160.0, 210.0, 280.0})
        if (fixed > d0 && fixed < d_int_) bp.push_back(fixed);
    bp.push_back(d_int_);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return b - a < 1e-9; }),
             bp.end());

    Plan plan;
    plan.nodes.reserve(bp.size() * gl_d_.x.size());
    const double d0_eff = std::max(d0, 1e-9);
    for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
        const double half = 0.5 * (bp[p + 1] - bp[p]);
        const double mid = 0.5 * (bp[p + 1] + bp[p]);
        for (std::size_t i = 0; i < gl_d_.x.size(); ++i) {
            const double d = mid + half * gl_d_.x[i];
            PlanNode node;
            node.wLambda = half * gl_d_.w[i] * los_intensity(d, c_, s_);
            const GainPmf pmf = interferer_gain_pmf(d, d0_eff, c_, s_);
            const double hl = c_.P_t_lin * c_.xi * path_w(d, s_.eps_f, c_.dz);
            for (int g = 0; g < 4; ++g) {
                node.a[static_cast<std::size_t>(g)] = hl * pmf.gain[static_cast<std::size_t>(g)];
                node.pr[static_cast<std::size_t>(g)] = pmf.prob[static_cast<std::size_t>(g)];
            }
            plan.nodes.push_back(node);
        }
    }
    return plan;
}

void AnalyticEngine::scaled_terms(const Plan& plan, double s, int l_max,
                                  std::span<double> out) const
{
    if (s < 0.0) throw ScenarioError("Laplace argument s must be >= 0");
    std::fill(out.begin(), out.begin() + l_max + 1, 0.0);

    const auto& w = mftr_.weights();
    const int J = mftr_.j_count();
    const int mu = s_.mftr.mu;
    const double s2h = c_.sigma2_half;

    double g0 = -s * c_.N0_lin;
    if (g0 < kLogTiny) return; // noise term alone underflows the transform
    std::vector<double> gk(static_cast<std::size_t>(l_max) + 1, 0.0);

    for (const PlanNode& node : plan.nodes) {
        double one_minus_e = 0.0;
        for (int gi = 0; gi < 4; ++gi) {
            const double pr = node.pr[static_cast<std::size_t>(gi)];
            if (pr <= 0.0) continue;
            const double x = s2h * s * node.a[static_cast<std::size_t>(gi)];
            if (x <= 0.0) continue;
            const double z = x / (1.0 + x);
            const double y = 1.0 - z;
            const double prw = pr * node.wLambda;

            // d_j = 1 - y^{j+mu} via the stable recurrence d <- y d + z
            double d = 0.0;
            for (int t = 0; t < mu; ++t) d = y * d + z;
            double yp = 1.0 - d; // y^mu
            double sumd = 0.0;
            for (int j = 0; j < J; ++j) {
                const double wj = w[static_cast<std::size_t>(j)];
                sumd += wj * d;
                double cterm = wj * yp;
                if (cterm > kTermTiny && l_max >= 1) {
                    for (int k = 1; k <= l_max; ++k) {
                        cterm *= z * (mu + j + k - 1) / k;
                        gk[static_cast<std::size_t>(k)] += prw * cterm;
                        if (cterm < kTermTiny && z * (mu + j + k) < k + 1.0) break;
                    }
                }
                d = y * d + z;
                yp *= y;
            }
            one_minus_e += pr * sumd;
        }
        g0 -= node.wLambda * one_minus_e;
    }
    if (l_max >= 1) gk[1] += s * c_.N0_lin;

    if (g0 < kLogTiny) return; // exp underflow: all terms vanish
    out[0] = std::exp(g0);
    for (int l = 1; l <= l_max; ++l) {
        double acc = 0.0;
        for (int k = 1; k <= l; ++k)
            acc += k * gk[static_cast<std::size_t>(k)] * out[static_cast<std::size_t>(l - k)];
        out[static_cast<std::size_t>(l)] = acc / l;
    }
}

double AnalyticEngine::laplace_interference(double s, double d0) const
{
    Plan plan = make_plan(d0);
    double c0[1];
    scaled_terms(plan, s, 0, c0);
    return c0[0];
}

void AnalyticEngine::laplace_derivatives(double s, double d0, int l_max,
                                         std::span<double> out) const
{
    if (l_max < 0 || out.size() < static_cast<std::size_t>(l_max) + 1)
        throw ScenarioError("laplace_derivatives: bad output span");
    Plan plan = make_plan(d0);

    // g(s) and its unscaled derivatives
    std::vector<double> g(static_cast<std::size_t>(l_max) + 1, 0.0);
    std::vector<double> tmp(static_cast<std::size_t>(l_max) + 1, 0.0);
    g[0] = -s * c_.N0_lin;
    if (l_max >= 1) g[1] = -c_.N0_lin;
    for (const PlanNode& node : plan.nodes) {
        for (int gi = 0; gi < 4; ++gi) {
            const double pr = node.pr[static_cast<std::size_t>(gi)];
            if (pr <= 0.0) continue;
            mftr_.laplace_factor_derivatives(s, node.a[static_cast<std::size_t>(gi)], l_max, tmp);
            g[0] -= node.wLambda * pr * (1.0 - tmp[0]);
            for (int k = 1; k <= l_max; ++k)
                g[static_cast<std::size_t>(k)] += node.wLambda * pr * tmp[static_cast<std::size_t>(k)];
        }
    }

    out[0] = std::exp(g[0]);
    for (int l = 1; l <= l_max; ++l) {
        double acc = 0.0;
        double binom = 1.0; // C(l-1, k-1)
        for (int k = 1; k <= l; ++k) {
            acc += binom * g[static_cast<std::size_t>(k)] * out[static_cast<std::size_t>(l - k)];
            binom = binom * (l - k) / k;
        }
        out[static_cast<std::size_t>(l)] = acc;
    }
}

double AnalyticEngine::rho_of(double h_pe, double d0, double gamma_lin) const
{
    const double w = path_w(d0, s_.eps_f, c_.dz);
    return gamma_lin / (c_.sigma2_half * c_.P_t_lin * c_.xi * c_.G_max * h_pe * w);
}

double AnalyticEngine::conditional_coverage_plan(const Plan& plan, double h_pe, double d0,
                                                 double gamma_lin) const
{
    if (!(h_pe > 0.0 && h_pe <= 1.0)) throw ScenarioError("conditional coverage: h_pe in (0,1]");
    if (!(gamma_lin > 0.0)) throw ScenarioError("conditional coverage: gamma must be > 0");
    const double rho = rho_of(h_pe, d0, gamma_lin);

    double cov = 0.0;
    if (!q_.rho_with_j_mu) {
        std::vector<double> C(static_cast<std::size_t>(l_max_) + 1, 0.0);
        scaled_terms(plan, rho, l_max_, C);
        for (int l = 0; l <= l_max_; ++l)
            cov += C[static_cast<std::size_t>(l)] * tail_[static_cast<std::size_t>(l)];
    } else {
        // printed variant: rho scaled by (j+mu), evaluated per series term
        const auto& w = mftr_.weights();
        const int mu = s_.mftr.mu;
        std::vector<double> C(static_cast<std::size_t>(l_max_) + 1, 0.0);
        for (int j = 0; j < mftr_.j_count(); ++j) {
            const double wj = w[static_cast<std::size_t>(j)];
            if (wj < q_.series_tol * 1e-3) continue;
            const int lj = std::min(j + mu - 1, l_max_);
            scaled_terms(plan, (j + mu) * rho, lj, C);
            double part = 0.0;
            for (int l = 0; l <= lj; ++l) part += C[static_cast<std::size_t>(l)];
            cov += wj * part;
        }
    }

    if (cov < -1e-6 || cov > 1.0 + 1e-6)
        throw ScenarioError("conditional coverage outside [0,1] beyond numeric noise: " +
                            std::to_string(cov));
    return std::clamp(cov, 0.0, 1.0);
}

double AnalyticEngine::conditional_coverage(double h_pe, double d0, double gamma_lin) const
{
    Plan plan = make_plan(d0);
    return conditional_coverage_plan(plan, h_pe, d0, gamma_lin);
}

double AnalyticEngine::coverage_given_d0(const Plan& plan, double d0, double gamma_lin) const
{
    if (c_.no_pointing_error())
        return conditional_coverage_plan(plan, 1.0, d0, gamma_lin);
    // substitute t = h_pe^beta so the power-law weight becomes uniform on (0,1]
    const double inv_beta = 1.0 / c_.beta;
    double acc = 0.0;
    for (std::size_t i = 0; i < gl_h_.x.size(); ++i) {
        const double t = 0.5 + 0.5 * gl_h_.x[i];
        const double h = std::pow(t, inv_beta);
        acc += 0.5 * gl_h_.w[i] * conditional_coverage_plan(plan, h, d0, gamma_lin);
    }
    return acc;
}

double AnalyticEngine::coverage_probability(double gamma_lin) const
{
    CoverageCurve curve = coverage_curve({10.0 * std::log10(gamma_lin)}, 1);
    return curve.values[0];
}

CoverageCurve AnalyticEngine::coverage_curve(const std::vector<double>& gamma_db,
                                             int workers) const
{
    // outer d0 quadrature nodes with nearest-LoS-distance weights
    struct OuterNode { double d0, weight; };
    std::vector<OuterNode> outer;
    for (double lo = 0.0; lo < d0_max_ - 1e-12; lo += q_.d0_panel) {
        const double hi = std::min(lo + q_.d0_panel, d0_max_);
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < gl_d0_.x.size(); ++i) {
            const double d0 = mid + half * gl_d0_.x[i];
            outer.push_back({d0, half * gl_d0_.w[i] * nearest_los_pdf(d0, c_, s_)});
        }
    }

    std::vector<double> gamma_lin(gamma_db.size());
    for (std::size_t i = 0; i < gamma_db.size(); ++i) gamma_lin[i] = db_to_lin(gamma_db[i]);

    std::vector<std::vector<double>> contrib(outer.size());
    parallel_for(static_cast<long>(outer.size()), workers, [&](long i) {
        const auto& node = outer[static_cast<std::size_t>(i)];
        Plan plan = make_plan(node.d0);
        auto& row = contrib[static_cast<std::size_t>(i)];
        row.resize(gamma_lin.size());
        for (std::size_t gidx = 0; gidx < gamma_lin.size(); ++gidx)
            row[gidx] = node.weight * coverage_given_d0(plan, node.d0, gamma_lin[gidx]);
    });

    CoverageCurve curve;
    curve.provenance = "analytic";
    curve.gamma_db = gamma_db;
    curve.values.assign(gamma_db.size(), 0.0);
    for (const auto& row : contrib)
        for (std::size_t gidx = 0; gidx < row.size(); ++gidx) curve.values[gidx] += row[gidx];
    for (double& v : curve.values) v = std::clamp(v, 0.0, 1.0);

    curve.metadata["series_tol"] = std::to_string(q_.series_tol);
    curve.metadata["l_max"] = std::to_string(l_max_);
    curve.metadata["j_terms"] = std::to_string(mftr_.j_count());
    curve.metadata["d0_max_m"] = std::to_string(d0_max_);
    curve.metadata["d_int_cutoff_m"] = std::to_string(d_int_);
    curve.metadata["d0_nodes"] = std::to_string(outer.size());
    curve.metadata["hpe_nodes"] = std::to_string(c_.no_pointing_error() ? 1 : q_.hpe_nodes);
    curve.metadata["rho_variant"] = q_.rho_with_j_mu ? "printed-j-mu" : "expansion-consistent";
    return curve;
}

} // namespace thzcov
