#include <doctest.h>

#include <cmath>

#include "lyorad/error.h"
#include "lyorad/model.h"

using namespace lyorad;

namespace {

VialResult run(const ProcessSettings& p, const MaterialProperties& m = {}, const VialGeometry& g = {},
               const NumericsConfig& n = {}) {
    return simulate_single_vial(m, p, g, {}, n);
}

ProcessSettings mode(DryingMode d) {
    ProcessSettings p;
    p.mode = d;
    return p;
}

}  // namespace

TEST_CASE("shelf temperature ramps to its plateau") {
    ProcessSettings p;
    CHECK(shelf_temperature(0.0, p) == doctest::Approx(236.85));
    CHECK(shelf_temperature(600.0, p) == doctest::Approx(246.85));
    CHECK(shelf_temperature(1e5, p) == doctest::Approx(281.85));
    // ramp lasts 45 K / (1 K/min) = 2700 s
    const double exact = 236.85 * 2700.0 + 0.5 * 45.0 * 2700.0 + 281.85 * 300.0;
    CHECK(shelf_temperature_integral(0.0, 3000.0, p) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("power densities follow the mode") {
    VialGeometry g;
    auto cfd = power_densities(mode(DryingMode::CFD), g);
    CHECK(cfd.hv1 == 0.0);
    CHECK(cfd.hv2 == 0.0);
    auto mfd = power_densities(mode(DryingMode::MFD), g);
    CHECK(mfd.hv1 == doctest::Approx(3.73e-4 * 85.0 / 3.3e-6));
    CHECK(mfd.hv2 == doctest::Approx(8.62e-3 * 85.0 / 3.3e-6));
    CHECK(mfd.hv3 == doctest::Approx(2.5e-5 * 85.0 / 3.3e-6));
    CHECK(mode(DryingMode::MFD).effective().h == 0.0);
    CHECK(mode(DryingMode::CFD).effective().Q == 0.0);
    CHECK(mode(DryingMode::HFD).effective().h == 65.0);
}

TEST_CASE("microwave-only drying matches closed-form stage durations") {
    // Without shelf contact or radiation the product heats uniformly, then sublimes at
    // a constant volumetric rate.
    const ProcessSettings p = mode(DryingMode::MFD);
    const MaterialProperties m;
    const VialGeometry g;
    const double hv1 = p.p1 * p.Q / g.V;
    const double hv2 = p.p2 * p.Q / g.V;
    const double t_m = m.rho * m.cp * (p.Tm - p.T0) / hv1;
    const double t_sub = (m.rho - m.rho_d) * m.dh_sub / hv2;
    const VialResult r = run(p);
    CHECK(r.t_m == doctest::Approx(t_m).epsilon(1e-4));
    CHECK(r.t_dry - r.t_m == doctest::Approx(t_sub).epsilon(1e-4));
    CHECK(r.t_dry / 3600.0 == doctest::Approx(4.04).epsilon(0.01));
}

TEST_CASE("shelf-driven sublimation consumes exactly the latent load") {
    // With Hv3 = 0 the product sits at Tm, so the front advances with the shelf flux only.
    const ProcessSettings p = mode(DryingMode::CFD);
    const MaterialProperties m;
    const VialGeometry g;
    const VialResult r = run(p);
    const double load = (m.rho - m.rho_d) * m.dh_sub * g.L;
    double delivered = 0.0;
    const double dt = 0.5;
    for (double t = r.t_m; t < r.t_dry; t += dt) {
        const double a = std::min(dt, r.t_dry - t);
        const double tb = 0.5 * (shelf_temperature(t, p) + shelf_temperature(t + a, p));
        delivered += p.h * (tb - p.Tm) * a;
    }
    CHECK(delivered == doctest::Approx(load).epsilon(1e-3));
    CHECK(r.t_dry / 3600.0 == doctest::Approx(17.7).epsilon(0.01));
}

TEST_CASE("no-radiation baselines of the three modes") {
    CHECK(run(mode(DryingMode::CFD)).t_dry / 3600.0 == doctest::Approx(17.7).epsilon(0.1 / 17.7));
    CHECK(run(mode(DryingMode::MFD)).t_dry / 3600.0 == doctest::Approx(4.0).epsilon(0.1 / 4.0));
    CHECK(run(mode(DryingMode::HFD)).t_dry / 3600.0 == doctest::Approx(3.2).epsilon(0.1 / 3.2));
}

TEST_CASE("heating stage converges in space and time") {
    const ProcessSettings p = mode(DryingMode::HFD);
    NumericsConfig coarse, mid, fine;
    coarse.nodes = 26;
    coarse.dt = 4.0;
    mid.nodes = 51;
    mid.dt = 2.0;
    const double a = run(p, {}, {}, coarse).t_m;
    const double b = run(p, {}, {}, mid).t_m;
    const double c = run(p, {}, {}, fine).t_m;
    CHECK(std::abs(c - b) < std::abs(b - a));
}

TEST_CASE("a heat gain from radiation shortens drying") {
    const ProcessSettings p = mode(DryingMode::CFD);
    RadiationSources gain;
    gain.heating = [](double, std::span<const double>, std::span<double> q) {
        for (double& x : q) x = -0.01;
    };
    gain.sublimation = [](double, double) { return -0.01; };
    const VialResult base = run(p);
    const VialResult r = simulate_single_vial({}, p, {}, gain, {});
    CHECK(r.t_dry < base.t_dry);
    CHECK(r.absorbed_energy == doctest::Approx(0.01 * r.t_dry).epsilon(1e-3));
}

TEST_CASE("series sampling") {
    const VialResult r = simulate_single_vial({}, mode(DryingMode::HFD), {}, {}, {}, 60.0);
    REQUIRE(r.series.size() > 10);
    CHECK(r.series.front().t == 0.0);
    CHECK(r.series[1].t == doctest::Approx(60.0));
    CHECK(r.series.back().s == doctest::Approx(0.042).epsilon(1e-6));
}

TEST_CASE("invalid inputs are rejected") {
    MaterialProperties m;
    m.rho_d = 1000.0;
    CHECK_THROWS_AS(m.validate(), Error);
    ProcessSettings p;
    p.h = -1.0;
    CHECK_THROWS_AS(p.validate(), Error);
    NumericsConfig n;
    n.nodes = 2;
    CHECK_THROWS_AS(n.validate(), Error);
}

TEST_CASE("a shelf colder than Tm never reaches sublimation") {
    ProcessSettings p = mode(DryingMode::CFD);
    p.Tb_max = 250.0;
    NumericsConfig n;
    n.max_time = 50.0 * 3600.0;
    try {
        run(p, {}, {}, n);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSublimationReached);
    }
}
