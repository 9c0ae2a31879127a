#include <doctest.h>

#include <cmath>

#include "lyorad/error.h"
#include "lyorad/geometry.h"

using namespace lyorad;

TEST_CASE("rectangular layout is centered with pitch d + c") {
    const Layout l = build_rectangular_layout(10, 10, 0.01, 0.005);
    REQUIRE(l.size() == 100);
    CHECK(l.rows == 10);
    CHECK(l.cols == 10);
    CHECK(l.centers[1].x - l.centers[0].x == doctest::Approx(0.015));
    double sx = 0, sy = 0;
    for (const Vec2& p : l.centers) {
        sx += p.x;
        sy += p.y;
    }
    CHECK(sx == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sy == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("vial labels of a square array") {
    const Layout l = build_rectangular_layout(10, 10, 0.01, 0.005);
    const Classification c = classify_vials(l);
    int corner = 0, edge = 0, inner = 0;
    for (VialLabel v : c.labels) {
        corner += v == VialLabel::Corner;
        edge += v == VialLabel::Edge;
        inner += v == VialLabel::Inner;
    }
    CHECK(corner == 4);
    CHECK(edge == 32);
    CHECK(inner == 64);
    CHECK_FALSE(c.warning);
    CHECK(reference_vials(l, VialLabel::Corner) == std::vector<std::size_t>{0});
    CHECK(reference_vials(l, VialLabel::Edge) == std::vector<std::size_t>{5});
    CHECK(reference_vials(l, VialLabel::Inner).size() == 4);
    CHECK(reference_vials(build_rectangular_layout(5, 5, 0.01, 0.005), VialLabel::Inner) ==
          std::vector<std::size_t>{12});
}

TEST_CASE("single vial is its own corner") {
    const Layout l = build_rectangular_layout(1, 1, 0.01, 0.005);
    CHECK(classify_vials(l).labels.front() == VialLabel::Corner);
}

TEST_CASE("hexagonal rows are offset by half a pitch") {
    const Layout l = build_hexagonal_layout(3, 4, 0.01, 0.002);
    REQUIRE(l.size() == 12);
    const double pitch = 0.012;
    CHECK(l.centers[4].x - l.centers[0].x == doctest::Approx(0.5 * pitch));
    CHECK(l.centers[4].y - l.centers[0].y == doctest::Approx(pitch * std::sqrt(3.0) / 2.0));
    CHECK_NOTHROW(validate_layout(l, 0.30));
}

TEST_CASE("layout errors") {
    try {
        build_rectangular_layout(30, 30, 0.01, 0.005);
        FAIL("expected LayoutTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LayoutTooLarge);
    }
    try {
        build_custom_layout({{0.0, 0.0}, {0.005, 0.0}}, 0.01);
        FAIL("expected GeometryConflict");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GeometryConflict);
    }
    const Layout custom = build_custom_layout({{0.0, 0.0}, {0.02, 0.0}}, 0.01);
    CHECK(classify_vials(custom).warning);
    CHECK_THROWS_AS(reference_vials(custom, VialLabel::Corner), Error);
}

TEST_CASE("tray frame clears the array by the gap") {
    Scene s;
    s.layout = build_rectangular_layout(10, 10, 0.01, 0.005);
    const Occluder tray = tray_frame(s.layout, 0.005, 0.042, 0.3, 293.15);
    CHECK(tray.closed);
    REQUIRE(tray.points.size() == 4);
    // outermost surface at 4.5 pitches + radius, plus the gap
    const double half = 4.5 * 0.015 + 0.005 + 0.005;
    CHECK(std::abs(tray.points[0].x) == doctest::Approx(half));
    CHECK(tray.length() == doctest::Approx(8.0 * half));
    CHECK_NOTHROW(add_occluder(s, tray));

    Occluder cutting;
    cutting.points = {{-0.1, s.layout.centers[0].y}, {0.1, s.layout.centers[0].y}};
    try {
        add_occluder(s, cutting);
        FAIL("expected GeometryConflict");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GeometryConflict);
    }
}

TEST_CASE("segment distance") {
    CHECK(segment_point_distance({0, 0}, {1, 0}, {0.5, 2}) == doctest::Approx(2.0));
    CHECK(segment_point_distance({0, 0}, {1, 0}, {4, 4}) == doctest::Approx(5.0));
}
