#pragma once

#include <cmath>

#include "thzcov/scenario.hpp"

namespace thzcov {

// Large-scale THz path gain of a link with horizontal distance d.
struct LinkGain {
    double d = 0.0;   // horizontal distance, m
    double W = 0.0;   // distance factor exp(-eps r)/r^2 with r the 3D distance
    double H_L = 0.0; // xi * W
};

inline double path_w(double d, double eps, double dz)
{
    double r2 = d * d + dz * dz;
    return std::exp(-eps * std::sqrt(r2)) / r2;
}

inline LinkGain large_scale_gain(double d, const DerivedConstants& c, const Scenario& s)
{
    LinkGain g;
    g.d = d;
    g.W = path_w(d, s.eps_f, c.dz);
    g.H_L = c.xi * g.W;
    return g;
}

} // namespace thzcov
