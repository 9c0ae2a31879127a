#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lyorad/geometry.h"

namespace lyorad {

enum class SurfaceKind { Vial, OccluderFace, Wall };

struct SurfaceInfo {
    std::string id;
    SurfaceKind kind = SurfaceKind::Vial;
    double area = 0.0;
    int owner = -1;   // vial index, or occluder index for occluder faces
    int face = 0;     // 0 = left face, 1 = right face (occluders only)

    bool operator==(const SurfaceInfo&) const = default;
};

// Surface roster used everywhere: vials first, then two faces per occluder, wall last.
std::vector<SurfaceInfo> surface_roster(const Scene& scene);

// Dense view-factor matrix; F(i, j) is the fraction of radiation leaving i that reaches j.
class ViewFactorMatrix {
public:
    ViewFactorMatrix() = default;
    explicit ViewFactorMatrix(std::vector<SurfaceInfo> surfaces);

    std::size_t size() const noexcept { return surfaces_.size(); }
    double& operator()(std::size_t i, std::size_t j) { return f_[i * size() + j]; }
    double operator()(std::size_t i, std::size_t j) const { return f_[i * size() + j]; }

    const std::vector<SurfaceInfo>& surfaces() const noexcept { return surfaces_; }
    double area(std::size_t i) const { return surfaces_[i].area; }
    std::size_t wall_index() const noexcept { return size() - 1; }

    double row_sum(std::size_t i) const;
    // Largest |row sum - 1| and largest |A_i F_ij - A_j F_ji| / max(A_i F_ij, tiny).
    double max_summation_error() const;
    double max_reciprocity_error() const;

    bool operator==(const ViewFactorMatrix&) const = default;

private:
    std::vector<SurfaceInfo> surfaces_;
    std::vector<double> f_;
};

struct McConfig {
    std::int64_t n_rays = 100000;
    std::uint64_t seed = 20240601;

    bool operator==(const McConfig&) const = default;
};

double analytical_two_vial_vf(double c, double d);
double analytical_middle_three_vf(double c, double d);

// Closed-form matrix for one vial, two vials, or three collinear equally spaced vials.
ViewFactorMatrix analytical_view_factors(const Scene& scene);

// Raw estimate: rows for vials and occluder faces, wall row left at zero.
// Bit-identical for identical (scene, n_rays, seed), independent of thread count.
ViewFactorMatrix monte_carlo_view_factors(const Scene& scene, const McConfig& cfg);

// Fills the wall row by reciprocity, enforces reciprocity between the estimated rows,
// closes every row into the wall, and checks all invariants.
ViewFactorMatrix complete_and_validate(ViewFactorMatrix raw);

// CSV: header "surface,<ids...>,area", one row per emitting surface.
void write_view_factor_csv(std::ostream& out, const ViewFactorMatrix& vf);
ViewFactorMatrix read_view_factor_csv(std::istream& in);
void write_view_factor_csv(const std::string& path, const ViewFactorMatrix& vf);
ViewFactorMatrix read_view_factor_csv(const std::string& path);

}  // namespace lyorad
