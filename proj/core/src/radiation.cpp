#include "lyorad/radiation.h"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "lyorad/error.h"

namespace lyorad {

double surface_resistance(double eps, double area) {
    if (!(eps > 0.0) || eps > 1.0) {
        throw Error(ErrorKind::InvalidArgument, "emissivity must lie in (0, 1]");
    }
    if (!(area > 0.0)) throw Error(ErrorKind::InvalidArgument, "area must be positive");
    return (1.0 - eps) / (eps * area);
}

double space_resistance(double area, double view_factor) {
    if (!(area > 0.0) || !(view_factor > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "space resistance needs positive A and F");
    }
    return 1.0 / (area * view_factor);
}

double two_surface_resistance(double eps1, double A1, double F12, double eps2, double A2) {
    return surface_resistance(eps1, A1) + space_resistance(A1, F12) +
           surface_resistance(eps2, A2);
}

double two_surface_qrad(double T1, double T2, double eps1, double A1, double F12, double eps2,
                        double A2) {
    const double drive = kStefanBoltzmann * (std::pow(T1, 4) - std::pow(T2, 4));
    return drive / two_surface_resistance(eps1, A1, F12, eps2, A2);
}

double simplified_qrad(double T_vial, const Chamber& wall, double eps_vial, double A_vial,
                       double F_vial_wall) {
    if (F_vial_wall <= 0.0) return 0.0;
    return two_surface_qrad(T_vial, wall.T2, eps_vial, A_vial, F_vial_wall, wall.eps_wall,
                            wall.A2);
}

double hybrid_qrad(double T_vial, double T_wall, double r_rad) {
    if (!(r_rad > 0.0)) throw Error(ErrorKind::InvalidArgument, "R_rad must be positive");
    return kStefanBoltzmann * (std::pow(T_vial, 4) - std::pow(T_wall, 4)) / r_rad;
}

struct RadiosityNetwork::Impl {
    std::size_t k = 0;
    Eigen::MatrixXd F;
    Eigen::VectorXd eps;
    Eigen::VectorXd area;
    std::vector<bool> adiabatic;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;

    Eigen::MatrixXd rhs_for(std::span<const double> temperature, std::size_t columns) const {
        Eigen::MatrixXd rhs(k, columns);
        for (std::size_t c = 0; c < columns; ++c) {
            for (std::size_t i = 0; i < k; ++i) {
                if (adiabatic[i]) {
                    rhs(i, c) = 0.0;
                } else {
                    const double t = temperature[c * k + i];
                    rhs(i, c) = eps(i) * kStefanBoltzmann * t * t * t * t;
                }
            }
        }
        return rhs;
    }

    void net_exchange(const Eigen::MatrixXd& J, std::span<const double> temperature,
                      std::span<double> q_out) const {
        const std::size_t columns = static_cast<std::size_t>(J.cols());
        Eigen::MatrixXd irradiation;
        bool need_irradiation = false;
        for (std::size_t i = 0; i < k; ++i) need_irradiation |= (!adiabatic[i] && eps(i) >= 1.0);
        if (need_irradiation) irradiation = F * J;
        for (std::size_t c = 0; c < columns; ++c) {
            for (std::size_t i = 0; i < k; ++i) {
                double q = 0.0;
                if (adiabatic[i]) {
                    q = 0.0;
                } else if (eps(i) < 1.0) {
                    const double t = temperature[c * k + i];
                    const double emissive = kStefanBoltzmann * t * t * t * t;
                    q = eps(i) * area(i) / (1.0 - eps(i)) * (emissive - J(i, c));
                } else {
                    q = area(i) * (J(i, c) - irradiation(i, c));
                }
                q_out[c * k + i] = q;
            }
        }
    }
};

RadiosityNetwork::RadiosityNetwork(const ViewFactorMatrix& view_factors,
                                   std::vector<double> emissivity, std::vector<bool> adiabatic)
    : impl_(std::make_unique<Impl>()) {
    Impl& m = *impl_;
    m.k = view_factors.size();
    if (emissivity.size() != m.k) {
        throw Error(ErrorKind::InvalidArgument, "one emissivity per surface is required");
    }
    if (adiabatic.empty()) adiabatic.assign(m.k, false);
    if (adiabatic.size() != m.k) {
        throw Error(ErrorKind::InvalidArgument, "one adiabatic flag per surface is required");
    }
    m.adiabatic = std::move(adiabatic);
    m.F.resize(m.k, m.k);
    m.eps.resize(m.k);
    m.area.resize(m.k);
    for (std::size_t i = 0; i < m.k; ++i) {
        if (!(emissivity[i] > 0.0) || emissivity[i] > 1.0) {
            throw Error(ErrorKind::InvalidArgument,
                        "emissivity of " + view_factors.surfaces()[i].id + " outside (0, 1]");
        }
        m.eps(i) = emissivity[i];
        m.area(i) = view_factors.area(i);
        for (std::size_t j = 0; j < m.k; ++j) m.F(i, j) = view_factors(i, j);
    }

    // Gray surfaces: J_i - (1 - eps_i) sum_j F_ij J_j = eps_i sigma T_i^4.
    // Reradiating surfaces: J_i - sum_j F_ij J_j = 0.
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m.k, m.k);
    for (std::size_t i = 0; i < m.k; ++i) {
        const double reflect = m.adiabatic[i] ? 1.0 : 1.0 - m.eps(i);
        A.row(i) -= reflect * m.F.row(i);
        if (!m.adiabatic[i]) {
            const double off = A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
            if (std::abs(A(i, i)) - off <= 0.0) {
                throw Error(ErrorKind::SingularSystem,
                            "enclosure row " + view_factors.surfaces()[i].id +
                                " is not diagonally dominant");
            }
        }
    }
    m.lu.compute(A);
    if (!(m.lu.rcond() > 1e-14)) {
        throw Error(ErrorKind::SingularSystem, "enclosure system is singular");
    }
}

RadiosityNetwork::~RadiosityNetwork() = default;
RadiosityNetwork::RadiosityNetwork(RadiosityNetwork&&) noexcept = default;
RadiosityNetwork& RadiosityNetwork::operator=(RadiosityNetwork&&) noexcept = default;

std::size_t RadiosityNetwork::size() const noexcept { return impl_->k; }

RadiosityResult RadiosityNetwork::solve(std::span<const double> temperature) const {
    const Impl& m = *impl_;
    if (temperature.size() != m.k) {
        throw Error(ErrorKind::InvalidArgument, "one temperature per surface is required");
    }
    const Eigen::MatrixXd J = m.lu.solve(m.rhs_for(temperature, 1));
    RadiosityResult out;
    out.J.assign(J.data(), J.data() + m.k);
    out.Q.resize(m.k);
    m.net_exchange(J, temperature, out.Q);
    return out;
}

void RadiosityNetwork::solve_many(std::span<const double> temperature, std::size_t columns,
                                  std::span<double> q_out) const {
    const Impl& m = *impl_;
    if (temperature.size() != m.k * columns || q_out.size() != m.k * columns) {
        throw Error(ErrorKind::InvalidArgument, "batch buffers must be size() x columns");
    }
    const Eigen::MatrixXd J = m.lu.solve(m.rhs_for(temperature, columns));
    m.net_exchange(J, temperature, q_out);
}

RadiosityResult solve_radiosity_network(const SurfaceSet& surfaces) {
    if (surfaces.view_factors == nullptr) {
        throw Error(ErrorKind::InvalidArgument, "surface set has no view factors");
    }
    const RadiosityNetwork network(*surfaces.view_factors, surfaces.emissivity,
                                   surfaces.adiabatic);
    return network.solve(surfaces.temperature);
}

}  // namespace lyorad
