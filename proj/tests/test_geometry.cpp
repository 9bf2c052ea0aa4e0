#include "doctest.h"

#include <cmath>
#include <vector>

#include "thzcov/geometry.hpp"
#include "thzcov/rng.hpp"
#include "thzcov/special.hpp"

using namespace thzcov;

TEST_SUITE("geometry") {

TEST_CASE("blockage law splits into human and wall factors")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    for (double d : {0.0, 1.0, 5.0, 20.0}) {
        CHECK(los_probability(d, c) ==
              doctest::Approx(human_los_probability(d, c) * wall_los_probability(d, c))
                  .epsilon(1e-14));
        CHECK(los_probability(d, c) == doctest::Approx(std::exp(-c.blockage_rate() * d)));
    }
}

TEST_CASE("LoS intensity peaks at 1/kappa")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    const double dstar = 1.0 / c.blockage_rate();
    CHECK(dstar == doctest::Approx(10.650).epsilon(1e-3));
    CHECK(los_intensity(dstar, c, s) > los_intensity(dstar - 0.2, c, s));
    CHECK(los_intensity(dstar, c, s) > los_intensity(dstar + 0.2, c, s));
}

TEST_CASE("closed-form mean LoS count matches quadrature to 1e-8")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    GaussLegendre gl = gauss_legendre(64);
    for (double d : {0.5, 2.0, 10.0, 50.0, 200.0}) {
        double quad = 0.0;
        const int panels = 8;
        for (int p = 0; p < panels; ++p)
            quad += gl_integrate([&](double x) { return los_intensity(x, c, s); },
                                 d * p / panels, d * (p + 1) / panels, gl);
        CHECK(los_count_mean(d, c, s) == doctest::Approx(quad).epsilon(1e-8));
    }
    // frozen oracle points for the reference deployment
    CHECK(los_count_mean(2.0, c, s) == doctest::Approx(1.1097).epsilon(2e-3));
    CHECK(los_count_mean(1e4, c, s) == doctest::Approx(71.269).epsilon(1e-3));
}

TEST_CASE("nearest-LoS distance law: density, cdf, total mass")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    CHECK(nearest_los_pdf(2.0, c, s) == doctest::Approx(0.3434).epsilon(2e-3));
    CHECK(nearest_los_cdf(0.0, c, s) == 0.0);
    CHECK(nearest_los_cdf(200.0, c, s) == doctest::Approx(1.0).epsilon(1e-12));
    // pdf integrates to the cdf
    GaussLegendre gl = gauss_legendre(64);
    double mass = 0.0;
    for (int p = 0; p < 10; ++p)
        mass += gl_integrate([&](double x) { return nearest_los_pdf(x, c, s); },
                             2.0 * p, 2.0 * (p + 1), gl);
    CHECK(mass == doctest::Approx(nearest_los_cdf(20.0, c, s)).epsilon(1e-8));
}

TEST_CASE("AP field has Poisson counts and uniform placement")
{
    Scenario s;
    std::mt19937_64 rng = make_stream(3, 0);
    const double R = 10.0;
    const double mean = s.lambda_A * M_PI * R * R;
    double count_sum = 0.0, inner = 0.0, total = 0.0;
    const int reps = 2000;
    for (int i = 0; i < reps; ++i) {
        ApField f = sample_ap_field(s, rng, R);
        count_sum += static_cast<double>(f.positions.size());
        for (const Vec2& p : f.positions) {
            total += 1.0;
            if (norm(p) < R / std::sqrt(2.0)) inner += 1.0; // half the disc area
        }
    }
    double avg = count_sum / reps;
    double se = std::sqrt(mean / reps);
    CHECK(std::abs(avg - mean) < 5.0 * se);
    double frac = inner / total;
    CHECK(std::abs(frac - 0.5) < 5.0 * std::sqrt(0.25 / total));
}

TEST_CASE("wall orientations are balanced")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    std::mt19937_64 rng = make_stream(4, 0);
    double along_y = 0.0, total = 0.0;
    for (int i = 0; i < 50; ++i) {
        BlockageField f = sample_blockage_field(s, c, rng, 30.0);
        for (const Wall& w : f.walls()) {
            total += 1.0;
            if (w.along_y) along_y += 1.0;
        }
    }
    CHECK(std::abs(along_y / total - 0.5) < 5.0 * std::sqrt(0.25 / total));
}

TEST_CASE("LoS query on constructed scenes")
{
    Scenario s; // h_U=1, h_B=1.7, h_A=3 -> height fraction 0.35
    DerivedConstants c = derive_constants(s);
    const Vec2 ap{5.0, 0.0}; // link height passes h_B at 1.75 m

    auto field = [&](std::vector<Human> h, std::vector<Wall> w) {
        return BlockageField(std::move(h), std::move(w), 10.0, s);
    };

    // human inside the low part of the link, on axis: blocked
    CHECK_FALSE(field({{{1.0, 0.0}}}, {}).is_los(ap, s, c));
    // human past the h_B crossing: the link is already above head height
    CHECK(field({{{3.0, 0.0}}}, {}).is_los(ap, s, c));
    // human offset beyond its radius: clear
    CHECK(field({{{1.0, 0.3}}}, {}).is_los(ap, s, c));
    CHECK_FALSE(field({{{1.0, 0.2}}}, {}).is_los(ap, s, c));
    // wall crossing the link: blocked regardless of position along it
    CHECK_FALSE(field({}, {{{2.0, 0.0}, 3.0, true}}).is_los(ap, s, c));
    CHECK_FALSE(field({}, {{{4.5, 0.0}, 3.0, true}}).is_los(ap, s, c));
    // parallel wall off axis, and a crossing wall beyond the AP: clear
    CHECK(field({}, {{{2.0, 0.5}, 3.0, false}}).is_los(ap, s, c));
    CHECK(field({}, {{{6.0, 0.0}, 3.0, true}}).is_los(ap, s, c));
    // empty scene
    CHECK(field({}, {}).is_los(ap, s, c));
}

TEST_CASE("sampled scenes reproduce the exponential LoS law")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    const double d = 6.0;
    const int n = 20000;
    int los = 0;
    std::mt19937_64 rng = make_stream(5, 0);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
    for (int i = 0; i < n; ++i) {
        BlockageField f = sample_blockage_field(s, c, rng, d);
        double psi = uni(rng); // random bearing: orientation-averaged wall law
        if (f.is_los({d * std::cos(psi), d * std::sin(psi)}, s, c)) ++los;
    }
    const double p = los_probability(d, c);
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(los) / n - p) < 4.0 * se);
}

} // TEST_SUITE
