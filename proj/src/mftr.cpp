#include "thzcov/mftr.hpp"

#include <cmath>
#include <complex>

#include "thzcov/special.hpp"

namespace thzcov {

MftrModel MftrModel::build(const MftrParams& p, double tol, int j_cap)
{
    if (!(p.m > 0.0) || p.K < 0.0 || p.delta < 0.0 || p.delta > 1.0 || p.mu < 1)
        throw ScenarioError("invalid MFTR parameters");
    if (j_cap < 1) throw ScenarioError("MFTR j_cap must be >= 1");

    MftrModel mod;
    mod.p_ = p;
    mod.sigma2_half_ = 1.0 / (p.mu * (p.K + 1.0));
    mod.tol_ = tol;

    // Specular amplitudes: V1^2 + V2^2 = 2 sigma^2 mu K, 2 V1 V2 = delta * (V1^2 + V2^2).
    const double spec_power = mod.sigma2_half_ * p.mu * p.K;
    const double root = std::sqrt(std::max(0.0, 1.0 - p.delta * p.delta));
    mod.v1_ = std::sqrt(spec_power * (1.0 + root) / 2.0);
    mod.v2_ = std::sqrt(std::max(0.0, spec_power - mod.v1_ * mod.v1_));

    // Phase-average the conditional negative-binomial weights.
    const int nodes = 256;
    std::vector<double> state(nodes), ratio(nodes);
    const double m = p.m;
    const double muK = p.mu * p.K;
    for (int i = 0; i < nodes; ++i) {
        double th = M_PI * (i + 0.5) / nodes;
        double cth = muK * (1.0 + p.delta * std::cos(th));
        state[i] = std::pow(m / (m + cth), m);
        ratio[i] = cth / (m + cth);
    }

    double cum = 0.0;
    int tiny_run = 0;
    for (int j = 0; j < j_cap; ++j) {
        double wj = 0.0;
        for (int i = 0; i < nodes; ++i) wj += state[i];
        wj /= nodes;
        mod.w_.push_back(wj);
        cum += wj;
        if (1.0 - cum <= tol * 1e-2) break;
        tiny_run = (wj <= tol * std::max(cum, 1e-300)) ? tiny_run + 1 : 0;
        if (tiny_run >= 3) break;
        for (int i = 0; i < nodes; ++i) state[i] *= ratio[i] * (m + j) / (j + 1.0);
    }

    double tail = 1.0 - cum;
    if (tail > 10.0 * tol)
        throw ScenarioError("MFTR series truncated: tail mass " + std::to_string(tail) +
                            " exceeds tolerance (increase j_cap)");
    if (!(std::abs(tail) < 1e-6))
        throw ScenarioError("r_j formula inconsistent: weights sum to " + std::to_string(cum));
    return mod;
}

double MftrModel::r(int j) const
{
    if (j < 0 || j >= j_count()) throw ScenarioError("r_j index out of cached range");
    const double m = p_.m;
    const double muK = p_.mu * p_.K;
    if (muK == 0.0) return j == 0 ? w_[0] * std::exp(std::lgamma(m) - m * std::log(m)) : 0.0;
    double lg = std::lgamma(m) - m * std::log(m) + std::lgamma(j + 1.0) - j * std::log(muK);
    return w_[static_cast<std::size_t>(j)] * std::exp(lg);
}

double MftrModel::cdf(double h) const
{
    if (h <= 0.0) return 0.0;
    const double x = h / sigma2_half_;
    const int mu = p_.mu;
    // Q(a, x) recurrence upwards in a = j + mu.
    double q = upper_gamma_reg(mu, x);
    double lp = mu * std::log(x) - x - std::lgamma(mu + 1.0);
    double pois = lp > -745.0 ? std::exp(lp) : 0.0; // x^mu e^-x / mu!
    double s = 0.0;
    for (std::size_t j = 0; j < w_.size(); ++j) {
        s += w_[j] * q;
        q += pois;
        if (q > 1.0) q = 1.0;
        pois *= x / (mu + static_cast<double>(j) + 1.0);
    }
    double F = 1.0 - s;
    return F < 0.0 ? 0.0 : (F > 1.0 ? 1.0 : F);
}

double MftrModel::sample(std::mt19937_64& rng) const
{
    std::gamma_distribution<double> gamma(p_.m, 1.0 / p_.m);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double sigma = std::sqrt(sigma2_half_ / 2.0);
    const double zeta = gamma(rng);
    const double phi1 = uni(rng), phi2 = uni(rng);
    const double amp = std::sqrt(zeta);
    std::complex<double> dominant =
        amp * (v1_ * std::polar(1.0, phi1) + v2_ * std::polar(1.0, phi2));
    std::complex<double> c1 = dominant + std::complex<double>(sigma * gauss(rng), sigma * gauss(rng));
    double h = std::norm(c1);
    for (int i = 1; i < p_.mu; ++i) {
        double re = sigma * gauss(rng), im = sigma * gauss(rng);
        h += re * re + im * im;
    }
    return h;
}

double MftrModel::laplace_factor(double s, double a) const
{
    const double x = sigma2_half_ * s * a;
    const double y = 1.0 / (1.0 + x);
    double yp = std::pow(y, p_.mu);
    double acc = 0.0;
    for (double wj : w_) {
        acc += wj * yp;
        yp *= y;
    }
    return acc;
}

void MftrModel::laplace_factor_derivatives(double s, double a, int l_max,
                                           std::span<double> out) const
{
    if (l_max < 0 || out.size() < static_cast<std::size_t>(l_max) + 1)
        throw ScenarioError("laplace_factor_derivatives: bad output span");
    const double x = sigma2_half_ * s * a;
    const double y = 1.0 / (1.0 + x);
    const double step = -sigma2_half_ * a * y;
    for (int k = 0; k <= l_max; ++k) out[k] = 0.0;
    double yp = std::pow(y, p_.mu);
    for (std::size_t j = 0; j < w_.size(); ++j) {
        double c = w_[j] * yp;
        out[0] += c;
        for (int k = 1; k <= l_max; ++k) {
            c *= step * (p_.mu + static_cast<double>(j) + k - 1);
            out[k] += c;
        }
        yp *= y;
    }
}

} // namespace thzcov
