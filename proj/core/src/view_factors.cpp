#include "lyorad/view_factors.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lyorad/error.h"
#include "lyorad/parallel.h"

namespace lyorad {

namespace {

constexpr std::int64_t kChunkRays = 8192;
constexpr double kHitEps = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Diffuse (cosine-weighted) direction about the unit normal n in 2D.
Vec2 diffuse_direction(Vec2 n, std::mt19937_64& rng) {
    double s = 0.0;
    do {
        s = 2.0 * unit_uniform(rng) - 1.0;
    } while (std::abs(s) >= 1.0);
    const double c = std::sqrt(1.0 - s * s);
    return {n.x * c - n.y * s, n.x * s + n.y * c};
}

double ray_circle(Vec2 o, Vec2 u, Vec2 center, double r) {
    const Vec2 oc = o - center;
    const double b = dot(u, oc);
    const double cc = dot(oc, oc) - r * r;
    if (cc > 0.0 && b > 0.0) return kInf;
    const double disc = b * b - cc;
    if (disc < 0.0) return kInf;
    const double t = -b - std::sqrt(disc);
    return t > kHitEps ? t : kInf;
}

double ray_segment(Vec2 o, Vec2 u, Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const double denom = cross(u, e);
    if (denom == 0.0) return kInf;
    const Vec2 ao = a - o;
    const double t = cross(ao, e) / denom;
    const double s = cross(ao, u) / denom;
    if (t > kHitEps && s >= 0.0 && s <= 1.0) return t;
    return kInf;
}

struct Segment {
    Vec2 a;
    Vec2 b;
    Vec2 left_normal;
    int occluder = 0;
};

// Nearest-hit tracer over circles (uniform-grid accelerated), segments, and the square wall.
class Tracer {
public:
    explicit Tracer(const Scene& scene)
        : centers_(scene.layout.centers),
          r_(scene.layout.radius()),
          half_(0.5 * scene.chamber.side),
          n_vials_(static_cast<int>(scene.layout.size())) {
        for (std::size_t k = 0; k < scene.occluders.size(); ++k) {
            const Occluder& occ = scene.occluders[k];
            for (std::size_t s = 0; s < occ.segment_count(); ++s) {
                const Vec2 a = occ.segment_start(s);
                const Vec2 b = occ.segment_end(s);
                const Vec2 e = b - a;
                const double len = std::hypot(e.x, e.y);
                segments_.push_back({a, b, {-e.y / len, e.x / len}, static_cast<int>(k)});
            }
        }
        wall_index_ = n_vials_ + 2 * static_cast<int>(scene.occluders.size());
        build_grid(scene.layout);
    }

    const std::vector<Segment>& segments() const noexcept { return segments_; }

    int trace(Vec2 o, Vec2 u, int skip_circle, int skip_segment) const {
        double best = kInf;
        int hit = -1;
        trace_circles(o, u, skip_circle, best, hit);
        for (std::size_t s = 0; s < segments_.size(); ++s) {
            if (static_cast<int>(s) == skip_segment) continue;
            const double t = ray_segment(o, u, segments_[s].a, segments_[s].b);
            if (t < best) {
                best = t;
                const Segment& seg = segments_[s];
                const int face = dot(u, seg.left_normal) < 0.0 ? 0 : 1;
                hit = n_vials_ + 2 * seg.occluder + face;
            }
        }
        if (hit >= 0) return hit;
        if (std::abs(o.x) > half_ || std::abs(o.y) > half_) {
            throw Error(ErrorKind::RayEscape, "ray origin lies outside the chamber");
        }
        // Any ray from inside the square leaves through the wall.
        double t_wall = kInf;
        if (u.x > 0) t_wall = std::min(t_wall, (half_ - o.x) / u.x);
        if (u.x < 0) t_wall = std::min(t_wall, (-half_ - o.x) / u.x);
        if (u.y > 0) t_wall = std::min(t_wall, (half_ - o.y) / u.y);
        if (u.y < 0) t_wall = std::min(t_wall, (-half_ - o.y) / u.y);
        if (!std::isfinite(t_wall)) throw Error(ErrorKind::RayEscape, "ray has no exit");
        return wall_index_;
    }

private:
    void build_grid(const Layout& layout) {
        if (layout.size() == 0) return;
        double min_x = kInf, min_y = kInf, max_x = -kInf, max_y = -kInf;
        for (const Vec2& p : layout.centers) {
            min_x = std::min(min_x, p.x - r_);
            min_y = std::min(min_y, p.y - r_);
            max_x = std::max(max_x, p.x + r_);
            max_y = std::max(max_y, p.y + r_);
        }
        cell_ = std::max(layout.d + layout.c, layout.d);
        origin_ = {min_x - 1e-9, min_y - 1e-9};
        gx_ = std::max(1, static_cast<int>(std::ceil((max_x - min_x + 2e-9) / cell_)));
        gy_ = std::max(1, static_cast<int>(std::ceil((max_y - min_y + 2e-9) / cell_)));
        cells_.assign(static_cast<std::size_t>(gx_) * gy_, {});
        for (int v = 0; v < n_vials_; ++v) {
            const Vec2 p = centers_[v];
            const int x0 = cell_x(p.x - r_), x1 = cell_x(p.x + r_);
            const int y0 = cell_y(p.y - r_), y1 = cell_y(p.y + r_);
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x) cells_[static_cast<std::size_t>(y) * gx_ + x].push_back(v);
        }
    }

    int cell_x(double x) const {
        return std::clamp(static_cast<int>(std::floor((x - origin_.x) / cell_)), 0, gx_ - 1);
    }
    int cell_y(double y) const {
        return std::clamp(static_cast<int>(std::floor((y - origin_.y) / cell_)), 0, gy_ - 1);
    }

    void trace_circles(Vec2 o, Vec2 u, int skip, double& best, int& hit) const {
        if (cells_.empty()) return;
        // Clip the ray to the grid box.
        const double bx0 = origin_.x, by0 = origin_.y;
        const double bx1 = origin_.x + gx_ * cell_, by1 = origin_.y + gy_ * cell_;
        double t_enter = 0.0, t_exit = kInf;
        const auto slab = [&](double o1, double u1, double lo, double hi) {
            if (u1 == 0.0) return o1 >= lo && o1 <= hi;
            double ta = (lo - o1) / u1, tb = (hi - o1) / u1;
            if (ta > tb) std::swap(ta, tb);
            t_enter = std::max(t_enter, ta);
            t_exit = std::min(t_exit, tb);
            return t_enter <= t_exit;
        };
        if (!slab(o.x, u.x, bx0, bx1) || !slab(o.y, u.y, by0, by1)) return;

        const Vec2 p{o.x + t_enter * u.x, o.y + t_enter * u.y};
        int cx = cell_x(p.x), cy = cell_y(p.y);
        const int step_x = u.x > 0 ? 1 : (u.x < 0 ? -1 : 0);
        const int step_y = u.y > 0 ? 1 : (u.y < 0 ? -1 : 0);
        const auto boundary_t = [&](int c, int step, double o1, double u1, double base) {
            if (step == 0) return kInf;
            const double edge = base + (step > 0 ? c + 1 : c) * cell_;
            return (edge - o1) / u1;
        };
        double t_next_x = boundary_t(cx, step_x, o.x, u.x, origin_.x);
        double t_next_y = boundary_t(cy, step_y, o.y, u.y, origin_.y);
        const double dt_x = step_x != 0 ? cell_ / std::abs(u.x) : kInf;
        const double dt_y = step_y != 0 ? cell_ / std::abs(u.y) : kInf;

        while (true) {
            for (int v : cells_[static_cast<std::size_t>(cy) * gx_ + cx]) {
                if (v == skip) continue;
                const double t = ray_circle(o, u, centers_[v], r_);
                if (t < best) {
                    best = t;
                    hit = v;
                }
            }
            const double t_cell_exit = std::min(t_next_x, t_next_y);
            if (best <= t_cell_exit) return;
            if (t_next_x < t_next_y) {
                cx += step_x;
                t_next_x += dt_x;
            } else {
                cy += step_y;
                t_next_y += dt_y;
            }
            if (cx < 0 || cx >= gx_ || cy < 0 || cy >= gy_) return;
        }
    }

    std::vector<Vec2> centers_;
    double r_;
    double half_;
    int n_vials_;
    int wall_index_ = 0;
    std::vector<Segment> segments_;
    Vec2 origin_;
    double cell_ = 1.0;
    int gx_ = 0, gy_ = 0;
    std::vector<std::vector<int>> cells_;
};

}  // namespace

std::vector<SurfaceInfo> surface_roster(const Scene& scene) {
    std::vector<SurfaceInfo> out;
    for (std::size_t v = 0; v < scene.layout.size(); ++v) {
        out.push_back({"vial_" + std::to_string(v), SurfaceKind::Vial, scene.vial_area,
                       static_cast<int>(v), 0});
    }
    for (std::size_t k = 0; k < scene.occluders.size(); ++k) {
        const Occluder& occ = scene.occluders[k];
        const double area = occ.length() * occ.height;
        out.push_back({"occ_" + std::to_string(k) + "_left", SurfaceKind::OccluderFace, area,
                       static_cast<int>(k), 0});
        out.push_back({"occ_" + std::to_string(k) + "_right", SurfaceKind::OccluderFace, area,
                       static_cast<int>(k), 1});
    }
    out.push_back({"wall", SurfaceKind::Wall, scene.chamber.A2, -1, 0});
    return out;
}

ViewFactorMatrix::ViewFactorMatrix(std::vector<SurfaceInfo> surfaces)
    : surfaces_(std::move(surfaces)), f_(surfaces_.size() * surfaces_.size(), 0.0) {}

double ViewFactorMatrix::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j) s += (*this)(i, j);
    return s;
}

double ViewFactorMatrix::max_summation_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) worst = std::max(worst, std::abs(row_sum(i) - 1.0));
    return worst;
}

double ViewFactorMatrix::max_reciprocity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            const double a = area(i) * (*this)(i, j);
            const double b = area(j) * (*this)(j, i);
            const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
            worst = std::max(worst, std::abs(a - b) / scale);
        }
    }
    return worst;
}

double analytical_two_vial_vf(double c, double d) {
    if (!(c >= 0) || !(d > 0)) throw Error(ErrorKind::InvalidArgument, "need c >= 0 and d > 0");
    const double y = 1.0 + c / d;
    return 1.0 - (std::sqrt(y * y - 1.0) + std::asin(1.0 / y) - y) / std::numbers::pi;
}

double analytical_middle_three_vf(double c, double d) {
    if (!(c >= 0) || !(d > 0)) throw Error(ErrorKind::InvalidArgument, "need c >= 0 and d > 0");
    const double y = 1.0 + c / d;
    return 1.0 - 2.0 * (std::sqrt(y * y - 1.0) + std::asin(1.0 / y) - y) / std::numbers::pi;
}

ViewFactorMatrix analytical_view_factors(const Scene& scene) {
    if (!scene.occluders.empty()) {
        throw Error(ErrorKind::InvalidArgument, "closed-form view factors do not handle occluders");
    }
    const Layout& layout = scene.layout;
    const std::size_t n = layout.size();
    ViewFactorMatrix raw(surface_roster(scene));
    const std::size_t wall = raw.wall_index();
    if (n == 1) {
        raw(0, wall) = 1.0;
        return complete_and_validate(std::move(raw));
    }
    if (n == 2 || n == 3) {
        const Vec2 a = layout.centers.front();
        const Vec2 b = layout.centers[1];
        const double pitch = std::hypot(b.x - a.x, b.y - a.y);
        const double gap = pitch - layout.d;
        bool collinear = true;
        if (n == 3) {
            const Vec2 m = layout.centers[1];
            const Vec2 e = layout.centers[2];
            collinear = std::abs(cross(m - a, e - a)) < 1e-12 &&
                        std::abs(std::hypot(e.x - m.x, e.y - m.y) - pitch) < 1e-12;
        }
        if (collinear && gap >= -1e-12) {
            const double f_end = analytical_two_vial_vf(std::max(gap, 0.0), layout.d);
            if (n == 2) {
                raw(0, wall) = raw(1, wall) = f_end;
                raw(0, 1) = raw(1, 0) = 1.0 - f_end;
            } else {
                const double f_mid = analytical_middle_three_vf(std::max(gap, 0.0), layout.d);
                raw(0, wall) = raw(2, wall) = f_end;
                raw(0, 1) = raw(2, 1) = 1.0 - f_end;
                raw(1, wall) = f_mid;
                raw(1, 0) = raw(1, 2) = 0.5 * (1.0 - f_mid);
            }
            return complete_and_validate(std::move(raw));
        }
    }
    throw Error(ErrorKind::InvalidArgument,
                "closed-form view factors need one vial, two vials, or three vials in a row");
}

ViewFactorMatrix monte_carlo_view_factors(const Scene& scene, const McConfig& cfg) {
    if (cfg.n_rays < 1) throw Error(ErrorKind::InvalidArgument, "n_rays must be >= 1");
    validate_layout(scene.layout, scene.chamber.side);
    const Tracer tracer(scene);
    ViewFactorMatrix raw(surface_roster(scene));
    const std::size_t k = raw.size();
    const std::size_t n_vials = scene.layout.size();
    const std::size_t n_emitters = k - 1;
    const auto chunks = static_cast<std::size_t>((cfg.n_rays + kChunkRays - 1) / kChunkRays);

    // Segment index ranges and cumulative lengths per occluder, for face emission.
    std::vector<std::size_t> seg_begin(scene.occluders.size() + 1, 0);
    for (std::size_t o = 0; o < scene.occluders.size(); ++o) {
        seg_begin[o + 1] = seg_begin[o] + scene.occluders[o].segment_count();
    }

    std::vector<std::vector<std::int64_t>> counts(n_emitters * chunks,
                                                  std::vector<std::int64_t>(k, 0));
    const double r = scene.layout.radius();
    parallel_for(n_emitters * chunks, [&](std::size_t task) {
        const std::size_t emitter = task / chunks;
        const std::size_t chunk = task % chunks;
        const std::int64_t first = static_cast<std::int64_t>(chunk) * kChunkRays;
        const std::int64_t rays = std::min<std::int64_t>(kChunkRays, cfg.n_rays - first);
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(emitter * 0x100000001ULL + chunk)));
        auto& hits = counts[task];

        if (emitter < n_vials) {
            const Vec2 c = scene.layout.centers[emitter];
            for (std::int64_t i = 0; i < rays; ++i) {
                const double phi = 2.0 * std::numbers::pi * unit_uniform(rng);
                const Vec2 n{std::cos(phi), std::sin(phi)};
                const Vec2 o = c + r * n;
                const Vec2 u = diffuse_direction(n, rng);
                ++hits[static_cast<std::size_t>(
                    tracer.trace(o, u, static_cast<int>(emitter), -1))];
            }
            return;
        }
        const std::size_t occ = (emitter - n_vials) / 2;
        const int face = static_cast<int>((emitter - n_vials) % 2);
        const auto& segs = tracer.segments();
        std::vector<double> cumulative;
        double total = 0.0;
        for (std::size_t s = seg_begin[occ]; s < seg_begin[occ + 1]; ++s) {
            const Vec2 e = segs[s].b - segs[s].a;
            total += std::hypot(e.x, e.y);
            cumulative.push_back(total);
        }
        for (std::int64_t i = 0; i < rays; ++i) {
            const double pick = unit_uniform(rng) * total;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
            const std::size_t local = std::min<std::size_t>(
                static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
            const std::size_t s = seg_begin[occ] + local;
            const Segment& seg = segs[s];
            const double along = unit_uniform(rng);
            const Vec2 o = seg.a + along * (seg.b - seg.a);
            const Vec2 n = face == 0 ? seg.left_normal : -1.0 * seg.left_normal;
            const Vec2 u = diffuse_direction(n, rng);
            ++hits[static_cast<std::size_t>(tracer.trace(o, u, -1, static_cast<int>(s)))];
        }
    });

    for (std::size_t e = 0; e < n_emitters; ++e) {
        std::vector<std::int64_t> total(k, 0);
        for (std::size_t ch = 0; ch < chunks; ++ch) {
            for (std::size_t j = 0; j < k; ++j) total[j] += counts[e * chunks + ch][j];
        }
        for (std::size_t j = 0; j < k; ++j) {
            raw(e, j) = static_cast<double>(total[j]) / static_cast<double>(cfg.n_rays);
        }
    }
    return raw;
}

ViewFactorMatrix complete_and_validate(ViewFactorMatrix vf) {
    const std::size_t k = vf.size();
    if (k == 0) throw Error(ErrorKind::InconsistentMatrix, "empty view-factor matrix");
    const std::size_t wall = vf.wall_index();
    for (std::size_t i = 0; i < wall; ++i) {
        const double sum = vf.row_sum(i);
        if (std::abs(sum - 1.0) > 0.01) {
            throw Error(ErrorKind::InconsistentMatrix,
                        "row " + vf.surfaces()[i].id + " sums to " + std::to_string(sum));
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (vf(i, j) < 0.0) {
                throw Error(ErrorKind::InconsistentMatrix, "negative view factor in row " +
                                                               vf.surfaces()[i].id);
            }
        }
        if (vf.surfaces()[i].kind == SurfaceKind::Vial && vf(i, i) != 0.0) {
            throw Error(ErrorKind::InconsistentMatrix, "convex vial surface sees itself");
        }
    }
    // Exchange matrix G = A F over the estimated rows plus the wall column. Pairs among the
    // estimated surfaces are pooled with inverse binomial-variance weights g (A - g).
    const ViewFactorMatrix raw = vf;
    std::vector<std::vector<double>> g(wall, std::vector<double>(wall + 1, 0.0));
    for (std::size_t i = 0; i < wall; ++i) {
        g[i][i] = vf.area(i) * vf(i, i);
        g[i][wall] = vf.area(i) * vf(i, wall);
        for (std::size_t j = i + 1; j < wall; ++j) {
            const double gi = vf.area(i) * vf(i, j);
            const double gj = vf.area(j) * vf(j, i);
            const double pooled = 0.5 * (gi + gj);
            const double wi = 1.0 / std::max(vf.area(i) - pooled, 1e-12 * vf.area(i));
            const double wj = 1.0 / std::max(vf.area(j) - pooled, 1e-12 * vf.area(j));
            g[i][j] = g[j][i] = (wi * gi + wj * gj) / (wi + wj);
        }
    }
    // Symmetric diagonal scaling G_ij <- d_i G_ij d_j (wall factor fixed at 1) until each
    // estimated row carries its own area again.
    for (int iter = 0; iter < 10000; ++iter) {
        double worst = 0.0;
        std::vector<double> d(wall, 1.0);
        for (std::size_t i = 0; i < wall; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j <= wall; ++j) sum += g[i][j];
            if (sum <= 0.0) {
                throw Error(ErrorKind::InconsistentMatrix, "row " + vf.surfaces()[i].id + " is empty");
            }
            d[i] = std::sqrt(vf.area(i) / sum);
            worst = std::max(worst, std::abs(sum / vf.area(i) - 1.0));
        }
        if (worst < 1e-14) break;
        for (std::size_t i = 0; i < wall; ++i) {
            for (std::size_t j = 0; j < wall; ++j) g[i][j] *= d[i] * d[j];
            g[i][wall] *= d[i];
        }
    }
    double correction = 0.0;
    for (std::size_t i = 0; i < wall; ++i) {
        for (std::size_t j = 0; j <= wall; ++j) {
            vf(i, j) = g[i][j] / vf.area(i);
            correction = std::max(correction, std::abs(vf(i, j) - raw(i, j)));
        }
        vf(wall, i) = g[i][wall] / vf.area(wall);
    }
    if (correction > 0.01) {
        throw Error(ErrorKind::InconsistentMatrix,
                    "renormalization changed a view factor by " + std::to_string(correction));
    }
    double wall_sum = 0.0;
    for (std::size_t j = 0; j < wall; ++j) wall_sum += vf(wall, j);
    if (wall_sum > 1.0 + 1e-12) {
        throw Error(ErrorKind::InconsistentMatrix, "wall row exceeds unity; wall area too small");
    }
    vf(wall, wall) = std::max(0.0, 1.0 - wall_sum);
    return vf;
}

void write_view_factor_csv(std::ostream& out, const ViewFactorMatrix& vf) {
    out << "surface";
    for (const auto& s : vf.surfaces()) out << ',' << s.id;
    out << ",area\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < vf.size(); ++i) {
        out << vf.surfaces()[i].id;
        for (std::size_t j = 0; j < vf.size(); ++j) out << ',' << vf(i, j);
        out << ',' << vf.area(i) << '\n';
    }
}

ViewFactorMatrix read_view_factor_csv(std::istream& in) {
    const auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::SchemaError, "empty view-factor CSV");
    const auto header = split(line);
    if (header.size() < 3 || header.front() != "surface" || header.back() != "area") {
        throw Error(ErrorKind::SchemaError, "view-factor CSV header must be surface,...,area");
    }
    const std::size_t k = header.size() - 2;
    std::vector<SurfaceInfo> surfaces(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::string& id = header[i + 1];
        SurfaceInfo& s = surfaces[i];
        s.id = id;
        if (id == "wall") {
            s.kind = SurfaceKind::Wall;
        } else if (id.rfind("vial_", 0) == 0) {
            s.kind = SurfaceKind::Vial;
            s.owner = std::stoi(id.substr(5));
        } else if (id.rfind("occ_", 0) == 0) {
            s.kind = SurfaceKind::OccluderFace;
            const auto us = id.find('_', 4);
            s.owner = std::stoi(id.substr(4, us - 4));
            s.face = id.substr(us + 1) == "left" ? 0 : 1;
        } else {
            throw Error(ErrorKind::SchemaError, "unknown surface id " + id);
        }
    }
    if (surfaces.back().kind != SurfaceKind::Wall) {
        throw Error(ErrorKind::SchemaError, "the wall must be the last surface");
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != k + 2) throw Error(ErrorKind::SchemaError, "ragged view-factor row");
        std::vector<double> row;
        for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(std::stod(cells[j]));
        rows.push_back(std::move(row));
    }
    if (rows.size() != k) throw Error(ErrorKind::SchemaError, "view-factor CSV is not square");
    for (std::size_t i = 0; i < k; ++i) surfaces[i].area = rows[i][k];
    ViewFactorMatrix vf(std::move(surfaces));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) vf(i, j) = rows[i][j];
    return vf;
}

void write_view_factor_csv(const std::string& path, const ViewFactorMatrix& vf) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    write_view_factor_csv(out, vf);
}

ViewFactorMatrix read_view_factor_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::FileError, "cannot open " + path);
    return read_view_factor_csv(in);
}

}  // namespace lyorad
