#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lyorad/error.h"
#include "lyorad/view_factors.h"

using namespace lyorad;

namespace {

// Crossed-strings result for two parallel cylinders of diameter d with surface gap c.
double cylinder_pair_vf(double c, double d) {
    const double x = 1.0 + c / d;
    return (std::sqrt(x * x - 1.0) + std::asin(1.0 / x) - x) / std::numbers::pi;
}

Scene row_of(int n, double d = 0.01, double c = 0.005) {
    Scene s;
    s.layout = build_rectangular_layout(n, 1, d, c);
    return s;
}

}  // namespace

TEST_CASE("closed forms match the crossed-strings construction") {
    for (double c : {0.0, 0.002, 0.005, 0.02}) {
        const double f12 = cylinder_pair_vf(c, 0.01);
        CHECK(analytical_two_vial_vf(c, 0.01) == doctest::Approx(1.0 - f12).epsilon(1e-12));
        CHECK(analytical_middle_three_vf(c, 0.01) == doctest::Approx(1.0 - 2.0 * f12).epsilon(1e-12));
    }
    CHECK(analytical_two_vial_vf(0.005, 0.01) == doctest::Approx(0.8893).epsilon(6e-5));
    CHECK(analytical_middle_three_vf(0.005, 0.01) == doctest::Approx(0.7786).epsilon(6e-5));
    CHECK(analytical_two_vial_vf(0.0, 0.01) == doctest::Approx(1.0 - (1.0 / std::numbers::pi) *
                                                                         (std::numbers::pi / 2.0 - 1.0)));
}

TEST_CASE("analytical matrices satisfy closure and reciprocity") {
    for (int n : {1, 2, 3}) {
        const ViewFactorMatrix vf = analytical_view_factors(row_of(n));
        CHECK(vf.size() == static_cast<std::size_t>(n + 1));
        CHECK(vf.max_summation_error() < 1e-12);
        CHECK(vf.max_reciprocity_error() < 1e-12);
    }
    CHECK(analytical_view_factors(row_of(1))(0, 1) == 1.0);
    CHECK_THROWS_AS(analytical_view_factors(row_of(4)), Error);
}

TEST_CASE("Monte Carlo estimate agrees with the closed form") {
    const Scene s = row_of(3);
    const ViewFactorMatrix exact = analytical_view_factors(s);
    const ViewFactorMatrix mc = complete_and_validate(monte_carlo_view_factors(s, {100000, 11}));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(mc(i, 3) == doctest::Approx(exact(i, 3)).epsilon(0.005));
    }
    CHECK(mc.max_summation_error() < 1e-9);
    CHECK(mc.max_reciprocity_error() < 1e-9);
}

TEST_CASE("Monte Carlo is deterministic for a seed") {
    Scene s;
    s.layout = build_rectangular_layout(4, 4, 0.01, 0.005);
    const ViewFactorMatrix a = monte_carlo_view_factors(s, {20000, 5});
    const ViewFactorMatrix b = monte_carlo_view_factors(s, {20000, 5});
    const ViewFactorMatrix c = monte_carlo_view_factors(s, {20000, 6});
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("packed vials block the wall for inner vials") {
    Scene s;
    s.layout = build_rectangular_layout(5, 5, 0.01, 0.0);
    const ViewFactorMatrix vf = complete_and_validate(monte_carlo_view_factors(s, {50000, 3}));
    CHECK(vf(12, vf.wall_index()) < 1e-3);
    CHECK(vf(0, vf.wall_index()) > 0.5);
}

TEST_CASE("closed tray hides the wall from every vial") {
    Scene s;
    s.layout = build_rectangular_layout(4, 4, 0.01, 0.005);
    s = add_occluder(s, tray_frame(s.layout, 0.005, 0.042, 0.3, 293.15));
    const ViewFactorMatrix vf = complete_and_validate(monte_carlo_view_factors(s, {20000, 1}));
    CHECK(vf.size() == 16 + 2 + 1);
    for (std::size_t v = 0; v < 16; ++v) CHECK(vf(v, vf.wall_index()) == doctest::Approx(0.0));
    CHECK(vf.max_summation_error() < 1e-9);
    CHECK(vf.max_reciprocity_error() < 1e-9);
}

TEST_CASE("completion rejects inconsistent rows") {
    ViewFactorMatrix raw = monte_carlo_view_factors(row_of(2), {10000, 1});
    raw(0, 1) += 0.2;
    try {
        complete_and_validate(raw);
        FAIL("expected InconsistentMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InconsistentMatrix);
    }
}

TEST_CASE("CSV round trip") {
    const ViewFactorMatrix vf = analytical_view_factors(row_of(3));
    std::stringstream ss;
    write_view_factor_csv(ss, vf);
    const std::string text = ss.str();
    CHECK(text.rfind("surface,vial_0,vial_1,vial_2,wall,area", 0) == 0);
    std::stringstream in(text);
    const ViewFactorMatrix back = read_view_factor_csv(in);
    REQUIRE(back.size() == vf.size());
    for (std::size_t i = 0; i < vf.size(); ++i) {
        CHECK(back.area(i) == vf.area(i));
        for (std::size_t j = 0; j < vf.size(); ++j) CHECK(back(i, j) == vf(i, j));
    }
    std::stringstream bad("surface,vial_0\nvial_0,abc\n");
    CHECK_THROWS_AS(read_view_factor_csv(bad), Error);
}
