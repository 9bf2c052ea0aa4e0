#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace thzcov {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a)
// for positive integer a (the only case the fading series needs:
// a = j + mu with integer mu). Q(a, x) = sum_{i<a} x^i e^{-x} / i!.
inline double upper_gamma_reg(int a, double x)
{
    if (a <= 0) throw std::invalid_argument("upper_gamma_reg: a must be >= 1");
    if (x <= 0.0) return 1.0;
    if (x < 700.0) {
        double term = std::exp(-x);
        double sum = term;
        for (int i = 1; i < a; ++i) {
            term *= x / i;
            sum += term;
        }
        return sum < 1.0 ? sum : 1.0;
    }
    // log-space for large x (result is tiny but well defined)
    double lx = std::log(x);
    double lmax = -INFINITY;
    std::vector<double> lt(static_cast<std::size_t>(a));
    for (int i = 0; i < a; ++i) {
        lt[i] = i * lx - x - std::lgamma(i + 1.0);
        if (lt[i] > lmax) lmax = lt[i];
    }
    if (lmax < -745.0) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < a; ++i) sum += std::exp(lt[i] - lmax);
    return std::exp(lmax) * sum;
}

struct GaussLegendre {
    std::vector<double> x; // nodes on [-1, 1]
    std::vector<double> w;
};

// Nodes/weights by Newton iteration on P_n; plenty accurate for n <= 64.
inline GaussLegendre gauss_legendre(int n)
{
    GaussLegendre gl;
    gl.x.resize(n);
    gl.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        gl.x[i] = -z;
        gl.x[n - 1 - i] = z;
        gl.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        gl.w[n - 1 - i] = gl.w[i];
    }
    return gl;
}

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double gl_integrate(const F& f, double a, double b, const GaussLegendre& gl)
{
    double c = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(mid + c * gl.x[i]);
    return c * s;
}

// Two-sided KS statistic of sorted samples against a continuous CDF.
template <class Cdf>
double ks_statistic(const std::vector<double>& sorted, const Cdf& cdf)
{
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double F = cdf(sorted[i]);
        double lo = F - i / n;
        double hi = (i + 1) / n - F;
        if (lo > d) d = lo;
        if (hi > d) d = hi;
    }
    return d;
}

// Chi-squared quantile via the Wilson-Hilferty approximation.
inline double chi2_quantile(double df, double z)
{
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    return df * t * t * t;
}

} // namespace thzcov
