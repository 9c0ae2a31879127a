#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "lyorad/error.h"
#include "lyorad/estimation.h"

using namespace lyorad;

namespace {

Scenario single(DryingMode mode) {
    Scenario s;
    s.process.mode = mode;
    s.scene.layout = build_rectangular_layout(1, 1, s.vial.d, 0.005);
    return s;
}

}  // namespace

TEST_CASE("parameter addressing") {
    Scenario s = single(DryingMode::CFD);
    set_parameter(s, "process.h", 40.0);
    CHECK(s.process.h == 40.0);
    CHECK(get_parameter(s, "chamber.T2") == 293.15);
    CHECK(fittable_parameters().size() >= 10);
    CHECK_THROWS_AS(set_parameter(s, "process.nope", 1.0), Error);
}

TEST_CASE("fitting h recovers the value that generated the data") {
    Scenario truth = single(DryingMode::CFD);
    truth.process.h = 40.0;
    const double t = simulate_vial(truth, 0).t_dry;
    FitProblem p;
    p.scenario = single(DryingMode::CFD);
    p.parameter = "process.h";
    p.lower = 10.0;
    p.upper = 100.0;
    p.targets = {{Observable::DryingTime, 0, t}};
    const FitResult r = fit_scalar(p);
    CHECK(r.value == doctest::Approx(40.0).epsilon(1e-3));
    CHECK(r.residual < 60.0);
}

TEST_CASE("fitting the switch time") {
    Scenario truth = single(DryingMode::HFD);
    truth.process.h = 50.0;
    const double t_m = simulate_vial(truth, 0).t_m;
    FitProblem p;
    p.scenario = single(DryingMode::HFD);
    p.parameter = "process.h";
    p.lower = 20.0;
    p.upper = 100.0;
    p.targets = {{Observable::SwitchTime, 0, t_m}};
    CHECK(fit_scalar(p).value == doctest::Approx(50.0).epsilon(2e-3));
}

TEST_CASE("targets outside the reachable range raise NoBracket") {
    FitProblem p;
    p.scenario = single(DryingMode::CFD);
    p.parameter = "process.h";
    p.lower = 30.0;
    p.upper = 100.0;
    p.targets = {{Observable::DryingTime, 0, 3600.0}};
    try {
        fit_scalar(p);
        FAIL("expected NoBracket");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoBracket);
    }
    p.lower = 200.0;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("wall temperature fit for the packed-array case") {
    Scenario s;
    s.material.rho_d = 252.0;
    s.process.h = 18.1;
    s.process.T0 = s.process.Tb0 = 230.75;
    s.process.Tb_max = 268.15;
    s.process.Tm = 242.70;
    s.process.ramp = 0.208 / 60.0;
    s.vial = VialGeometry::from_dimensions(0.01425, 0.008, 3.58e-4, 1.28e-6);
    s.scene.layout = build_rectangular_layout(10, 10, s.vial.d, 0.0);
    s.approach = Approach::Simplified;
    FitProblem p;
    p.scenario = s;
    p.parameter = "chamber.T2";
    p.lower = 260.0;
    p.upper = 300.0;
    p.targets = {{Observable::DryingTime, 0, 7.7 * 3600.0}};
    CHECK(fit_scalar(p).value == doctest::Approx(288.8).epsilon(1.0 / 288.8));
}

TEST_CASE("microwave fractions round trip") {
    Scenario s = single(DryingMode::MFD);
    s.process.Q = 85.0;
    s.process.Tm = 254.15;
    s.process.T0 = 236.85;
    s.process.p1 = 3.0e-4;
    s.process.p2 = 5.9e-3;
    s.process.p3 = 2.5e-5;
    s.vial = VialGeometry::from_dimensions(0.024, 0.0051, std::nullopt, 2.3e-6);
    const VialResult r = simulate_single_vial(s.material, s.process, s.vial, {}, s.numerics, 60.0);
    const MicrowaveFractions f = fit_microwave_fractions(microwave_data_from_result(r), s);
    CHECK(f.p1 == doctest::Approx(3.0e-4).epsilon(0.01));
    CHECK(f.p2 == doctest::Approx(5.9e-3).epsilon(0.01));
    CHECK(f.p3 == doctest::Approx(2.5e-5).epsilon(0.01));

    const MicrowaveFractions none = fit_microwave_fractions(microwave_data_from_result(r), single(DryingMode::CFD));
    CHECK(none.p1 == 0.0);
    CHECK_THROWS_AS(fit_microwave_fractions({}, s), Error);
}

TEST_CASE("hybrid resistance reproduces a simplified run") {
    Scenario s = single(DryingMode::HFD);
    s.approach = Approach::Simplified;
    s.vf_source = ViewFactorSource::Analytical;
    const double t = simulate_vial(s, 0).t_dry;
    s.approach = Approach::Hybrid;
    const double r = fit_hybrid_resistance(s, 0, t);
    const double expected = (0.2 / (0.8 * s.vial.A1)) + 1.0 / s.vial.A1 + 0.7 / (0.3 * 0.54);
    CHECK(r == doctest::Approx(expected).epsilon(0.01));

    Scenario none = s;
    none.approach = Approach::None;
    const double t_none = simulate_vial(none, 0).t_dry;
    try {
        fit_hybrid_resistance(s, 0, t_none + 600.0);
        FAIL("expected RadiationImmune");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RadiationImmune);
    }
    CHECK(fit_hybrid_resistance(s, 0, t_none) == kHybridResistanceCap);
}

TEST_CASE("hybrid map files round trip") {
    HybridMap map{{1200.5, 3.5e4, kHybridResistanceCap}, {0, 0, 1}, {0, 1, 0}, 293.15, "network, T2 = 293.15 K"};
    const auto path = (std::filesystem::temp_directory_path() / "lyorad_hybrid_test.csv").string();
    write_hybrid_map(path, map);
    CHECK(read_hybrid_map(path) == map);
    CHECK(std::filesystem::exists(path + ".meta.json"));
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".meta.json");
    CHECK_THROWS_AS(read_hybrid_map(path), Error);
}
