#pragma once

#include <random>
#include <span>
#include <vector>

#include "thzcov/scenario.hpp"

namespace thzcov {

// Multi-cluster fluctuating two-ray fading: two fluctuating specular rays
// (similarity delta, fluctuation m) plus mu diffuse clusters, with
// dominant-to-diffuse ratio K and unit mean power (2 sigma^2 = 1/(mu(K+1))).
//
// The CDF series is F(h) = 1 - sum_j w_j Q(j + mu, h / 2sigma^2), where
// Q is the regularized upper incomplete gamma and the cached weights
// w_j = (m^m / Gamma(m)) (mu K)^j r_j / j! form a probability mass over j.
// Each w_j is the circular average over the inter-ray phase of a
// negative-binomial weight; gamma-mixing the ray fluctuation in closed
// form leaves a single smooth 1D integral that a midpoint rule resolves
// to machine precision.
class MftrModel {
  public:
    // tol: allowed truncation mass left in the j-tail; j_cap: hard cap.
    // Throws ScenarioError if the tail cannot be driven below tol
    // ("truncation") or the weights fail to normalize ("inconsistent").
    static MftrModel build(const MftrParams& p, double tol = 1e-10, int j_cap = 200);

    const MftrParams& params() const { return p_; }
    double sigma2_half() const { return sigma2_half_; }
    int j_count() const { return static_cast<int>(w_.size()); }
    const std::vector<double>& weights() const { return w_; }
    double tol() const { return tol_; }

    // raw series coefficient r_j (w_j with the (mu K)^j / j! scaling removed)
    double r(int j) const;

    double cdf(double h) const;
    double sample(std::mt19937_64& rng) const;

    // E[exp(-s a H)] = sum_j w_j (1 + 2 sigma^2 s a)^-(j+mu)
    double laplace_factor(double s, double a) const;

    // d^k/ds^k of the factor for k = 0..l_max, in closed form.
    void laplace_factor_derivatives(double s, double a, int l_max,
                                    std::span<double> out) const;

  private:
    MftrParams p_;
    double sigma2_half_ = 0.0;
    double tol_ = 0.0;
    std::vector<double> w_;
    double v1_ = 0.0, v2_ = 0.0; // specular amplitudes of the sampler
};

} // namespace thzcov
