#pragma once

#include <string>
#include <vector>

namespace lyorad {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

enum class Arrangement { Rectangular, Hexagonal, Custom };

const char* to_string(Arrangement arrangement) noexcept;

// Vial positions in the chamber cross-section. The chamber center is the origin.
struct Layout {
    std::vector<Vec2> centers;
    std::vector<int> row;   // row index per vial, 0 = bottom row
    std::vector<int> col;   // column index per vial, 0 = leftmost
    int rows = 0;
    int cols = 0;
    double d = 0.01;
    double c = 0.005;
    Arrangement arrangement = Arrangement::Custom;

    std::size_t size() const noexcept { return centers.size(); }
    double radius() const noexcept { return 0.5 * d; }
    bool operator==(const Layout&) const = default;
};

struct Chamber {
    double side = 0.30;     // square cross-section side, m
    double A2 = 0.54;       // wall area used in the resistances, m^2
    double eps_wall = 0.3;
    double T2 = 293.15;     // K

    bool operator==(const Chamber&) const = default;
};

enum class OccluderThermal { Fixed, Adiabatic };

// Opaque full-height obstruction given as a polyline. Each occluder contributes two
// radiating surfaces: the face to the left of the traversal direction and the face
// to the right.
struct Occluder {
    std::string name = "occluder";
    std::vector<Vec2> points;
    bool closed = false;
    double height = 0.042;   // m, sets the face areas
    double emissivity = 0.3;
    OccluderThermal thermal = OccluderThermal::Fixed;
    double temperature = 293.15;   // K, used when thermal == Fixed

    std::size_t segment_count() const noexcept {
        if (points.size() < 2) return 0;
        return closed ? points.size() : points.size() - 1;
    }
    Vec2 segment_start(std::size_t i) const { return points[i]; }
    Vec2 segment_end(std::size_t i) const { return points[(i + 1) % points.size()]; }
    double length() const;
    bool operator==(const Occluder&) const = default;
};

struct Scene {
    Layout layout;
    Chamber chamber;
    std::vector<Occluder> occluders;
    double vial_area = 1.3e-3;   // lateral radiating area of one vial, m^2

    bool operator==(const Scene&) const = default;
};

Layout build_rectangular_layout(int nx, int ny, double d, double c, double chamber_side = 0.30);
Layout build_hexagonal_layout(int n_rows, int n_cols, double d, double c,
                              double chamber_side = 0.30);
Layout build_custom_layout(std::vector<Vec2> centers, double d, double chamber_side = 0.30);

// Throws GeometryConflict on overlapping vials, LayoutTooLarge if a vial leaves the chamber.
void validate_layout(const Layout& layout, double chamber_side);

enum class VialLabel { Corner, Edge, Inner };

const char* to_string(VialLabel label) noexcept;

struct Classification {
    std::vector<VialLabel> labels;
    bool warning = false;   // set for custom layouts, which are reported as all-inner
};

Classification classify_vials(const Layout& layout);

// Representative vials of a rectangular or hexagonal layout: the first corner, the
// middle vial of the bottom row, or the central block (one, two or four vials).
std::vector<std::size_t> reference_vials(const Layout& layout, VialLabel which);

// Throws GeometryConflict if any occluder segment cuts a vial or leaves the chamber.
Scene add_occluder(Scene scene, Occluder occluder);

// Square frame around the vial array with the given clearance to the outermost vial surfaces.
Occluder tray_frame(const Layout& layout, double gap, double height, double emissivity,
                    double temperature);

double segment_point_distance(Vec2 a, Vec2 b, Vec2 p);

}  // namespace lyorad
