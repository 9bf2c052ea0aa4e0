#include "doctest.h"

#include <cmath>

#include "thzcov/scenario.hpp"

using namespace thzcov;

TEST_SUITE("scenario") {

TEST_CASE("reference defaults and derived constants")
{
    Scenario s;
    s.validate();
    DerivedConstants c = derive_constants(s);

    // hand-checked oracles for the reference deployment
    CHECK(c.alpha == doctest::Approx(0.0175).epsilon(1e-12));
    CHECK(c.eta == doctest::Approx(2.0 * 0.04 * 3.0 / M_PI).epsilon(1e-12));
    CHECK(c.blockage_rate() == doctest::Approx(0.0938943).epsilon(1e-4));
    CHECK(c.xi == doctest::Approx(6.3326e-9).epsilon(1e-3));
    CHECK(c.sigma2_half == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
    CHECK(c.G_A_max == doctest::Approx(M_PI * 256.0).epsilon(1e-12));
    CHECK(c.G_max == doctest::Approx(40425.9).epsilon(1e-4));
    CHECK(c.beta == doctest::Approx(3.0135).epsilon(1e-3));
    CHECK(c.phi_AP == doctest::Approx(std::atan(2.0 / 15.0)).epsilon(1e-12));
    CHECK(c.dz == doctest::Approx(2.0));
    CHECK(c.P_t_lin == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-12));
    CHECK(c.N0_lin == doctest::Approx(std::pow(10.0, -7.7)).epsilon(1e-12));
    CHECK_FALSE(c.no_pointing_error());

    Scenario tight = s;
    tight.sigma_theta_deg = 0.5;
    CHECK(derive_constants(tight).beta == doctest::Approx(27.122).epsilon(1e-3));

    Scenario perfect = s;
    perfect.sigma_theta_deg = 0.0;
    DerivedConstants cp = derive_constants(perfect);
    CHECK(cp.no_pointing_error());
    CHECK(std::isinf(cp.beta));
}

TEST_CASE("effective simulation radius")
{
    Scenario s;
    DerivedConstants c = derive_constants(s);
    CHECK(effective_sim_radius(s, c) == doctest::Approx(10.0 / c.blockage_rate()));
    s.sim_radius = 42.0;
    CHECK(effective_sim_radius(s, c) == 42.0);
    s.sim_radius = 0.0;
    s.lambda_B = 10.0; // heavy blockage -> 10/kappa < 30, floor kicks in
    DerivedConstants dense = derive_constants(s);
    CHECK(effective_sim_radius(s, dense) == 30.0);
}

TEST_CASE("validation names the violated constraint")
{
    Scenario s;
    s.h_B = 3.5;
    CHECK_THROWS_WITH_AS(s.validate(), "h_U < h_B < h_A violated", ScenarioError);
    s = Scenario{};
    s.lambda_A = 0.0;
    CHECK_THROWS_WITH_AS(s.validate(), "lambda_A: must be strictly positive", ScenarioError);
    s = Scenario{};
    s.N_A = 1;
    CHECK_THROWS_AS(s.validate(), ScenarioError);
    s = Scenario{};
    s.mftr.delta = 1.5;
    CHECK_THROWS_AS(s.validate(), ScenarioError);
    s = Scenario{};
    s.n_trials = 0;
    CHECK_THROWS_AS(s.validate(), ScenarioError);
}

TEST_CASE("text format: parse, overrides, unknown keys, round trip")
{
    Scenario s = load_scenario("lambda_A = 0.2  # denser APs\nN_A=32\n\n# comment only\n");
    CHECK(s.lambda_A == 0.2);
    CHECK(s.N_A == 32);
    CHECK(s.N_U == 4); // untouched default

    CHECK_THROWS_AS(load_scenario("bogus_key = 1\n"), ScenarioError);
    CHECK_THROWS_AS(load_scenario("lambda_A = abc\n"), ScenarioError);
    CHECK_THROWS_AS(load_scenario("just a line\n"), ScenarioError);

    Scenario o;
    apply_override(o, "sigma_theta_deg", "0.5");
    apply_override(o, "wall_length_mode", "exponential");
    CHECK(o.sigma_theta_deg == 0.5);
    CHECK(o.wall_length_mode == WallLengthMode::Exponential);
    CHECK_THROWS_AS(apply_override(o, "wall_length_mode", "weird"), ScenarioError);

    o.f = 1.1e11;
    o.mftr.delta = 0.12345678901234567;
    o.n_trials = 777;
    Scenario back = load_scenario(serialize(o));
    CHECK(back.f == o.f);
    CHECK(back.mftr.delta == o.mftr.delta);
    CHECK(back.n_trials == o.n_trials);
    CHECK(back.sigma_theta_deg == o.sigma_theta_deg);
    CHECK(back.wall_length_mode == o.wall_length_mode);
    CHECK(serialize(back) == serialize(o));
}

} // TEST_SUITE
