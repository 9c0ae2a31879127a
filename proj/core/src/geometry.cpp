#include "lyorad/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lyorad/error.h"

namespace lyorad {

namespace {

constexpr double kGeomTol = 1e-12;

void check_array_args(int a, int b, double d, double c) {
    if (a < 1 || b < 1) throw Error(ErrorKind::InvalidArgument, "array dimensions must be >= 1");
    if (!(d > 0)) throw Error(ErrorKind::InvalidArgument, "vial diameter must be positive");
    if (!(c >= 0)) throw Error(ErrorKind::InvalidArgument, "vial gap must be non-negative");
}

void recenter(Layout& layout) {
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -min_x;
    double min_y = min_x;
    double max_y = -min_x;
    for (const Vec2& p : layout.centers) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const Vec2 mid{0.5 * (min_x + max_x), 0.5 * (min_y + max_y)};
    for (Vec2& p : layout.centers) p = p - mid;
}

}  // namespace

const char* to_string(Arrangement arrangement) noexcept {
    switch (arrangement) {
        case Arrangement::Rectangular: return "rectangular";
        case Arrangement::Hexagonal: return "hexagonal";
        case Arrangement::Custom: return "custom";
    }
    return "?";
}

const char* to_string(VialLabel label) noexcept {
    switch (label) {
        case VialLabel::Corner: return "corner";
        case VialLabel::Edge: return "edge";
        case VialLabel::Inner: return "inner";
    }
    return "?";
}

double Occluder::length() const {
    double total = 0.0;
    for (std::size_t i = 0; i < segment_count(); ++i) {
        const Vec2 v = segment_end(i) - segment_start(i);
        total += std::hypot(v.x, v.y);
    }
    return total;
}

double segment_point_distance(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 q = a + t * ab;
    return std::hypot(p.x - q.x, p.y - q.y);
}

void validate_layout(const Layout& layout, double chamber_side) {
    const double r = layout.radius();
    const double half = 0.5 * chamber_side;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const Vec2 p = layout.centers[i];
        if (std::abs(p.x) + r >= half || std::abs(p.y) + r >= half) {
            throw Error(ErrorKind::LayoutTooLarge,
                        "vial " + std::to_string(i) + " does not fit inside the chamber");
        }
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            const Vec2 q = layout.centers[j];
            if (std::hypot(p.x - q.x, p.y - q.y) < layout.d - kGeomTol) {
                throw Error(ErrorKind::GeometryConflict, "vials " + std::to_string(i) + " and " +
                                                             std::to_string(j) + " overlap");
            }
        }
    }
}

Layout build_rectangular_layout(int nx, int ny, double d, double c, double chamber_side) {
    check_array_args(nx, ny, d, c);
    const double pitch = d + c;
    const double extent = std::max(nx, ny) * d + (std::max(nx, ny) - 1) * c;
    if (extent >= chamber_side) {
        throw Error(ErrorKind::LayoutTooLarge, "array extent " + std::to_string(extent) +
                                                   " m does not fit the chamber");
    }
    Layout layout;
    layout.d = d;
    layout.c = c;
    layout.rows = ny;
    layout.cols = nx;
    layout.arrangement = Arrangement::Rectangular;
    // Numbered left to right, bottom row first.
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            layout.centers.push_back(
                {(i - 0.5 * (nx - 1)) * pitch, (j - 0.5 * (ny - 1)) * pitch});
            layout.row.push_back(j);
            layout.col.push_back(i);
        }
    }
    validate_layout(layout, chamber_side);
    return layout;
}

Layout build_hexagonal_layout(int n_rows, int n_cols, double d, double c, double chamber_side) {
    check_array_args(n_rows, n_cols, d, c);
    const double pitch = d + c;
    const double row_step = pitch * std::sqrt(3.0) / 2.0;
    Layout layout;
    layout.d = d;
    layout.c = c;
    layout.rows = n_rows;
    layout.cols = n_cols;
    layout.arrangement = Arrangement::Hexagonal;
    for (int j = 0; j < n_rows; ++j) {
        const double offset = (j % 2 == 1) ? 0.5 * pitch : 0.0;
        for (int i = 0; i < n_cols; ++i) {
            layout.centers.push_back({i * pitch + offset, j * row_step});
            layout.row.push_back(j);
            layout.col.push_back(i);
        }
    }
    recenter(layout);
    const double width = (n_cols - 1) * pitch + (n_rows > 1 ? 0.5 * pitch : 0.0) + d;
    const double height = (n_rows - 1) * row_step + d;
    if (std::max(width, height) >= chamber_side) {
        throw Error(ErrorKind::LayoutTooLarge, "hexagonal array does not fit the chamber");
    }
    validate_layout(layout, chamber_side);
    return layout;
}

Layout build_custom_layout(std::vector<Vec2> centers, double d, double chamber_side) {
    Layout layout;
    layout.centers = std::move(centers);
    layout.d = d;
    layout.c = 0.0;
    layout.arrangement = Arrangement::Custom;
    layout.rows = 0;
    layout.cols = 0;
    layout.row.assign(layout.centers.size(), 0);
    layout.col.resize(layout.centers.size());
    for (std::size_t i = 0; i < layout.centers.size(); ++i) layout.col[i] = static_cast<int>(i);
    validate_layout(layout, chamber_side);
    return layout;
}

Classification classify_vials(const Layout& layout) {
    Classification out;
    out.labels.assign(layout.size(), VialLabel::Inner);
    if (layout.arrangement == Arrangement::Custom) {
        out.warning = true;
        return out;
    }
    for (std::size_t v = 0; v < layout.size(); ++v) {
        const bool row_end = layout.row[v] == 0 || layout.row[v] == layout.rows - 1;
        const bool col_end = layout.col[v] == 0 || layout.col[v] == layout.cols - 1;
        if (row_end && col_end) {
            out.labels[v] = VialLabel::Corner;
        } else if (row_end || col_end) {
            out.labels[v] = VialLabel::Edge;
        }
    }
    return out;
}

std::vector<std::size_t> reference_vials(const Layout& layout, VialLabel which) {
    if (layout.arrangement == Arrangement::Custom || layout.size() == 0) {
        throw Error(ErrorKind::InvalidArgument, "reference vials need a generated layout");
    }
    const auto index = [&](int r, int c) {
        for (std::size_t v = 0; v < layout.size(); ++v) {
            if (layout.row[v] == r && layout.col[v] == c) return v;
        }
        throw Error(ErrorKind::InvalidArgument, "layout has no vial at the requested position");
    };
    switch (which) {
        case VialLabel::Corner: return {index(0, 0)};
        case VialLabel::Edge: return {index(0, layout.cols / 2)};
        case VialLabel::Inner: {
            std::vector<int> rows{layout.rows / 2};
            std::vector<int> cols{layout.cols / 2};
            if (layout.rows % 2 == 0 && layout.rows > 1) rows.push_back(layout.rows / 2 - 1);
            if (layout.cols % 2 == 0 && layout.cols > 1) cols.push_back(layout.cols / 2 - 1);
            std::vector<std::size_t> out;
            for (int r : rows)
                for (int c : cols) out.push_back(index(r, c));
            return out;
        }
    }
    return {};
}

Scene add_occluder(Scene scene, Occluder occluder) {
    if (occluder.segment_count() == 0) {
        throw Error(ErrorKind::GeometryConflict, "occluder needs at least one segment");
    }
    if (!(occluder.emissivity > 0 && occluder.emissivity <= 1) || !(occluder.height > 0)) {
        throw Error(ErrorKind::InvalidArgument, "occluder emissivity or height out of range");
    }
    const double half = 0.5 * scene.chamber.side;
    for (const Vec2& p : occluder.points) {
        if (std::abs(p.x) > half + kGeomTol || std::abs(p.y) > half + kGeomTol) {
            throw Error(ErrorKind::GeometryConflict, "occluder leaves the chamber");
        }
    }
    const double r = scene.layout.radius();
    for (std::size_t s = 0; s < occluder.segment_count(); ++s) {
        for (std::size_t v = 0; v < scene.layout.size(); ++v) {
            const double dist = segment_point_distance(occluder.segment_start(s),
                                                       occluder.segment_end(s),
                                                       scene.layout.centers[v]);
            if (dist < r - kGeomTol) {
                throw Error(ErrorKind::GeometryConflict,
                            occluder.name + " intersects vial " + std::to_string(v));
            }
        }
    }
    scene.occluders.push_back(std::move(occluder));
    return scene;
}

Occluder tray_frame(const Layout& layout, double gap, double height, double emissivity,
                    double temperature) {
    double min_x = std::numeric_limits<double>::infinity();
    double max_x = -min_x;
    double min_y = min_x;
    double max_y = -min_x;
    for (const Vec2& p : layout.centers) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double pad = layout.radius() + gap;
    Occluder frame;
    frame.name = "tray";
    // Counter-clockwise, so the left face points into the tray.
    frame.points = {{min_x - pad, min_y - pad},
                    {max_x + pad, min_y - pad},
                    {max_x + pad, max_y + pad},
                    {min_x - pad, max_y + pad}};
    frame.closed = true;
    frame.height = height;
    frame.emissivity = emissivity;
    frame.temperature = temperature;
    return frame;
}

}  // namespace lyorad
