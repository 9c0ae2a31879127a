#include <doctest.h>

#include <cmath>

#include "lyorad/error.h"
#include "lyorad/multi_vial.h"
#include "lyorad/radiation.h"

using namespace lyorad;

namespace {

Scenario array(int n, DryingMode mode, Approach approach, double c = 0.005) {
    Scenario s;
    s.process.mode = mode;
    s.scene.layout = build_rectangular_layout(n, n, s.vial.d, c);
    s.approach = approach;
    s.mc.n_rays = 20000;
    return s;
}

}  // namespace

TEST_CASE("no radiation gives every vial the single-vial time") {
    const SimulationResult r = simulate(array(3, DryingMode::HFD, Approach::None));
    REQUIRE(r.vials.size() == 9);
    for (const VialOutcome& o : r.vials) {
        CHECK(o.t_dry == r.vials[0].t_dry);
        CHECK(o.absorbed_energy == 0.0);
    }
    CHECK(r.vials[0].t_dry / 3600.0 == doctest::Approx(3.175).epsilon(1e-3));
}

TEST_CASE("single vial: network equals simplified equals the two-surface exchange") {
    Scenario s = array(1, DryingMode::HFD, Approach::Network);
    s.vf_source = ViewFactorSource::Analytical;
    const double net = simulate(s).vials[0].t_dry;
    s.approach = Approach::Simplified;
    const double simp = simulate(s).vials[0].t_dry;
    // The network steps all vials on a shared clock, so stage switches land a little differently.
    CHECK(net == doctest::Approx(simp).epsilon(1e-5));

    s.approach = Approach::Hybrid;
    HybridMap map;
    map.r_rad = {two_surface_resistance(0.8, s.vial.A1, 1.0, 0.3, 0.54)};
    map.row = {0};
    map.col = {0};
    s.hybrid = map;
    CHECK(simulate(s).vials[0].t_dry == doctest::Approx(simp).epsilon(1e-9));
}

TEST_CASE("radiation from a warm wall helps outer vials most") {
    const Scenario s = array(5, DryingMode::CFD, Approach::Network);
    const SimulationResult r = simulate(s);
    Scenario none = s;
    none.approach = Approach::None;
    const double base = simulate_vial(none, 0).t_dry;
    CHECK(r.vials[0].t_dry < r.vials[2].t_dry);
    CHECK(r.vials[2].t_dry < r.vials[12].t_dry);
    CHECK(r.vials[12].t_dry < base);
    CHECK(r.vials[0].label == VialLabel::Corner);
    CHECK(r.vials[0].absorbed_energy > r.vials[12].absorbed_energy);
    CHECK(r.vials[12].absorbed_energy > 0.0);
}

TEST_CASE("simplified approach ignores vial-to-vial reflection") {
    const ApproachComparison cmp = compare_approaches(array(5, DryingMode::CFD, Approach::Network));
    // Outer vials see part of the wall only through their neighbours in the network.
    CHECK(cmp.relative_delta[0] < -0.02);
    CHECK(cmp.simplified.vials[0].t_dry < cmp.network.vials[0].t_dry);
}

TEST_CASE("a wall at the product temperature does little") {
    Scenario s = array(3, DryingMode::HFD, Approach::Network);
    s.scene.chamber.T2 = s.process.Tm;
    Scenario none = s;
    none.approach = Approach::None;
    const double base = simulate_vial(none, 0).t_dry;
    for (const VialOutcome& o : simulate(s).vials) CHECK(std::abs(o.t_dry - base) / base < 0.03);
}

TEST_CASE("simulate_vial agrees with the full run") {
    const Scenario s = array(4, DryingMode::HFD, Approach::Simplified);
    const SimulationResult all = simulate(s);
    CHECK(simulate_vial(s, 5).t_dry == all.vials[5].t_dry);
    CHECK_THROWS_AS(simulate_vial(s, 16), Error);
}

TEST_CASE("time series and absorbed energy") {
    Scenario s = array(2, DryingMode::HFD, Approach::Network);
    s.series_interval = 120.0;
    const SimulationResult r = simulate(s);
    REQUIRE(r.series.size() == 4);
    CHECK(absorbed_radiative_energy(r, 0) == doctest::Approx(r.vials[0].absorbed_energy).epsilon(0.02));
    s.series_interval = 0.0;
    try {
        absorbed_radiative_energy(simulate(s), 0);
        FAIL("expected MissingTimeSeries");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingTimeSeries);
    }
}

TEST_CASE("hybrid map must cover the layout") {
    Scenario s = array(2, DryingMode::HFD, Approach::Hybrid);
    CHECK_THROWS_AS(simulate(s), Error);
    s.hybrid = HybridMap{{1e3}, {0}, {0}, 293.15, "test"};
    CHECK_THROWS_AS(simulate(s), Error);
}
