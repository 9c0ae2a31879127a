#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lyorad/geometry.h"
#include "lyorad/view_factors.h"

namespace lyorad {

inline constexpr double kStefanBoltzmann = 5.67e-8;   // W/(m^2 K^4)

// (1 - eps) / (eps A); zero for a black surface.
double surface_resistance(double eps, double area);

// 1 / (A F).
double space_resistance(double area, double view_factor);

// Series resistance between two gray surfaces that only see each other through F12.
double two_surface_resistance(double eps1, double A1, double F12, double eps2, double A2);

// Net exchange leaving surface 1 (W); negative when surface 1 gains heat.
double two_surface_qrad(double T1, double T2, double eps1, double A1, double F12, double eps2,
                        double A2);

// Vial-to-wall exchange that ignores every other surface.
double simplified_qrad(double T_vial, const Chamber& wall, double eps_vial, double A_vial,
                       double F_vial_wall);

// Exchange through a fitted lumped resistance.
double hybrid_qrad(double T_vial, double T_wall, double r_rad);

struct SurfaceSet {
    const ViewFactorMatrix* view_factors = nullptr;
    std::vector<double> temperature;   // K; ignored for adiabatic surfaces
    std::vector<double> emissivity;
    std::vector<bool> adiabatic;       // optional; reradiating surfaces with zero net exchange
};

struct RadiosityResult {
    std::vector<double> J;   // W/m^2
    std::vector<double> Q;   // W, net leaving each surface
};

// Direct dense solve of the gray-diffuse enclosure balance.
RadiosityResult solve_radiosity_network(const SurfaceSet& surfaces);

// Factorizes the enclosure once and solves for many temperature fields. Emissivities,
// areas, view factors and the adiabatic set are fixed; only temperatures change.
class RadiosityNetwork {
public:
    RadiosityNetwork(const ViewFactorMatrix& view_factors, std::vector<double> emissivity,
                     std::vector<bool> adiabatic = {});
    ~RadiosityNetwork();
    RadiosityNetwork(RadiosityNetwork&&) noexcept;
    RadiosityNetwork& operator=(RadiosityNetwork&&) noexcept;

    std::size_t size() const noexcept;

    RadiosityResult solve(std::span<const double> temperature) const;

    // Column-major batch: temperature and q_out are size() x columns.
    void solve_many(std::span<const double> temperature, std::size_t columns,
                    std::span<double> q_out) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace lyorad
