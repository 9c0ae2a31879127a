#include "lyorad/multi_vial.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "lyorad/error.h"
#include "lyorad/parallel.h"
#include "lyorad/radiation.h"

namespace lyorad {

namespace {

std::string with_vial(std::size_t v, const std::string& what) {
    return "vial " + std::to_string(v) + ": " + what;
}

[[noreturn]] void rethrow_for_vial(std::size_t v, const Error& e) {
    throw Error(e.kind(), with_vial(v, e.detail()));
}

std::vector<double> surface_emissivities(const Scenario& scenario, const ViewFactorMatrix& vf) {
    std::vector<double> eps;
    eps.reserve(vf.size());
    for (const SurfaceInfo& s : vf.surfaces()) {
        switch (s.kind) {
            case SurfaceKind::Vial: eps.push_back(scenario.material.eps_vial); break;
            case SurfaceKind::OccluderFace:
                eps.push_back(scenario.scene.occluders.at(static_cast<std::size_t>(s.owner)).emissivity);
                break;
            case SurfaceKind::Wall: eps.push_back(scenario.scene.chamber.eps_wall); break;
        }
    }
    return eps;
}

std::vector<bool> adiabatic_flags(const Scenario& scenario, const ViewFactorMatrix& vf) {
    std::vector<bool> flags;
    flags.reserve(vf.size());
    for (const SurfaceInfo& s : vf.surfaces()) {
        flags.push_back(s.kind == SurfaceKind::OccluderFace &&
                        scenario.scene.occluders.at(static_cast<std::size_t>(s.owner)).thermal ==
                            OccluderThermal::Adiabatic);
    }
    return flags;
}

double fixed_temperature(const Scenario& scenario, const SurfaceInfo& s) {
    if (s.kind == SurfaceKind::Wall) return scenario.scene.chamber.T2;
    const Occluder& occ = scenario.scene.occluders.at(static_cast<std::size_t>(s.owner));
    return occ.thermal == OccluderThermal::Fixed ? occ.temperature : scenario.scene.chamber.T2;
}

SimulationResult run_network(const Scenario& scenario, const ViewFactorMatrix& vf) {
    const std::size_t n_vials = scenario.scene.layout.size();
    const std::size_t k = vf.size();
    if (k != n_vials + 2 * scenario.scene.occluders.size() + 1) {
        throw Error(ErrorKind::InconsistentMatrix, "view-factor roster does not match the scene");
    }
    const RadiosityNetwork network(vf, surface_emissivities(scenario, vf),
                                   adiabatic_flags(scenario, vf));
    const auto nodes = static_cast<std::size_t>(scenario.numerics.nodes);
    const double dt = scenario.numerics.dt;

    std::vector<VialModel> models;
    models.reserve(n_vials);
    for (std::size_t v = 0; v < n_vials; ++v) {
        models.emplace_back(scenario.material, scenario.process, scenario.vial, scenario.numerics);
        models.back().set_hold_done_at_tm(scenario.hold_done_at_tm);
    }

    SimulationResult result;
    const bool keep_series = scenario.series_interval > 0.0;
    if (keep_series) result.series.resize(n_vials);
    double next_sample = 0.0;

    std::vector<double> temps(k * nodes);
    std::vector<double> q(k * nodes);
    std::vector<double> profile(nodes);
    std::vector<double> q_vial(nodes);
    std::size_t remaining = n_vials;
    double t = 0.0;

    while (remaining > 0) {
        bool any_heating = false;
        for (const VialModel& m : models) any_heating |= (m.state().stage == Stage::Heating);
        const std::size_t columns = any_heating ? nodes : 1;

        for (std::size_t v = 0; v < n_vials; ++v) {
            models[v].surface_temperatures(profile);
            for (std::size_t c = 0; c < columns; ++c) temps[c * k + v] = profile[c];
        }
        for (std::size_t i = n_vials; i < k; ++i) {
            const double tf = fixed_temperature(scenario, vf.surfaces()[i]);
            for (std::size_t c = 0; c < columns; ++c) temps[c * k + i] = tf;
        }
        network.solve_many(std::span(temps).first(k * columns), columns,
                           std::span(q).first(k * columns));

        const bool sample = keep_series && t >= next_sample;
        if (sample) next_sample += scenario.series_interval;

        for (std::size_t v = 0; v < n_vials; ++v) {
            VialModel& m = models[v];
            if (m.state().stage == Stage::Done) continue;
            for (std::size_t c = 0; c < nodes; ++c) {
                q_vial[c] = q[(columns == 1 ? 0 : c) * k + v];
            }
            if (sample) {
                models[v].surface_temperatures(profile);
                result.series[v].push_back({t, profile.front(), profile.back(), m.state().s,
                                            node_average(q_vial), m.absorbed_energy()});
            }
            try {
                m.step(dt, q_vial);
            } catch (const Error& e) {
                rethrow_for_vial(v, e);
            }
            if (m.state().stage == Stage::Done) {
                --remaining;
                if (keep_series) {
                    const VialState& st = m.state();
                    result.series[v].push_back({*st.t_dry, st.T_product, st.T_product, st.s, 0.0,
                                                m.absorbed_energy()});
                }
            }
        }
        t += dt;
    }

    const Classification cls = classify_vials(scenario.scene.layout);
    for (std::size_t v = 0; v < n_vials; ++v) {
        const VialState& st = models[v].state();
        result.vials.push_back({*st.t_m, *st.t_dry, cls.labels[v], models[v].absorbed_energy()});
    }
    return result;
}

VialResult run_one(const Scenario& scenario, double resistance) {
    RadiationSources sources;
    if (std::isfinite(resistance)) {
        const double wall4 = std::pow(scenario.scene.chamber.T2, 4);
        sources.heating = [resistance, wall4](double, std::span<const double> T,
                                              std::span<double> out) {
            for (std::size_t i = 0; i < T.size(); ++i) {
                out[i] = kStefanBoltzmann * (std::pow(T[i], 4) - wall4) / resistance;
            }
        };
        sources.sublimation = [resistance, wall4](double, double T) {
            return kStefanBoltzmann * (std::pow(T, 4) - wall4) / resistance;
        };
    }
    return simulate_single_vial(scenario.material, scenario.process, scenario.vial, sources,
                                scenario.numerics, scenario.series_interval);
}

// Per-vial resistance of an independent approach; +inf means no radiation.
std::vector<double> independent_resistances(const Scenario& scenario) {
    const std::size_t n = scenario.scene.layout.size();
    switch (scenario.approach) {
        case Approach::None: return std::vector<double>(n, std::numeric_limits<double>::infinity());
        case Approach::Simplified: return simplified_resistances(scenario, *resolve_view_factors(scenario));
        case Approach::Hybrid:
            if (!scenario.hybrid || scenario.hybrid->r_rad.size() != n) {
                throw Error(ErrorKind::SchemaError,
                            "hybrid approach needs one fitted resistance per vial");
            }
            for (double r : scenario.hybrid->r_rad) {
                if (!(r > 0.0)) throw Error(ErrorKind::SchemaError, "hybrid resistances must be > 0");
            }
            return scenario.hybrid->r_rad;
        case Approach::Network: break;
    }
    throw Error(ErrorKind::InvalidArgument, "the network approach couples all vials");
}

SimulationResult run_independent(const Scenario& scenario) {
    const std::size_t n_vials = scenario.scene.layout.size();
    const std::vector<double> resistance = independent_resistances(scenario);
    std::vector<VialResult> per_vial(n_vials);
    parallel_for(n_vials, [&](std::size_t v) {
        try {
            per_vial[v] = run_one(scenario, resistance[v]);
        } catch (const Error& e) {
            rethrow_for_vial(v, e);
        }
    });

    SimulationResult result;
    const Classification cls = classify_vials(scenario.scene.layout);
    if (scenario.series_interval > 0.0) result.series.resize(n_vials);
    for (std::size_t v = 0; v < n_vials; ++v) {
        result.vials.push_back(
            {per_vial[v].t_m, per_vial[v].t_dry, cls.labels[v], per_vial[v].absorbed_energy});
        if (scenario.series_interval > 0.0) result.series[v] = std::move(per_vial[v].series);
    }
    return result;
}

}  // namespace

const char* to_string(Approach approach) noexcept {
    switch (approach) {
        case Approach::None: return "none";
        case Approach::Simplified: return "simplified";
        case Approach::Hybrid: return "hybrid";
        case Approach::Network: return "network";
    }
    return "?";
}

const char* to_string(ViewFactorSource source) noexcept {
    switch (source) {
        case ViewFactorSource::Analytical: return "analytical";
        case ViewFactorSource::MonteCarlo: return "monte_carlo";
        case ViewFactorSource::File: return "file";
    }
    return "?";
}

Scene effective_scene(const Scenario& scenario) {
    Scene scene = scenario.scene;
    scene.vial_area = scenario.vial.A1;
    return scene;
}

std::shared_ptr<const ViewFactorMatrix> resolve_view_factors(const Scenario& scenario) {
    if (scenario.view_factors) return scenario.view_factors;
    const Scene scene = effective_scene(scenario);
    switch (scenario.vf_source) {
        case ViewFactorSource::Analytical:
            return std::make_shared<const ViewFactorMatrix>(analytical_view_factors(scene));
        case ViewFactorSource::MonteCarlo:
            return std::make_shared<const ViewFactorMatrix>(
                complete_and_validate(monte_carlo_view_factors(scene, scenario.mc)));
        case ViewFactorSource::File: {
            auto vf = complete_and_validate(read_view_factor_csv(scenario.vf_file));
            if (vf.surfaces() != surface_roster(scene)) {
                throw Error(ErrorKind::SchemaError,
                            "view-factor file " + scenario.vf_file + " does not match the scene");
            }
            return std::make_shared<const ViewFactorMatrix>(std::move(vf));
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown view-factor source");
}

std::vector<double> simplified_resistances(const Scenario& scenario, const ViewFactorMatrix& vf) {
    const std::size_t n_vials = scenario.scene.layout.size();
    const std::size_t wall = vf.wall_index();
    std::vector<double> r(n_vials);
    for (std::size_t v = 0; v < n_vials; ++v) {
        const double f = vf(v, wall);
        r[v] = f > 0.0 ? two_surface_resistance(scenario.material.eps_vial, scenario.vial.A1, f,
                                                scenario.scene.chamber.eps_wall,
                                                scenario.scene.chamber.A2)
                       : std::numeric_limits<double>::infinity();
    }
    return r;
}

SimulationResult simulate(const Scenario& scenario) {
    const auto start = std::chrono::steady_clock::now();
    if (scenario.scene.layout.size() == 0) {
        throw Error(ErrorKind::InvalidArgument, "scenario has no vials");
    }
    SimulationResult result;
    if (scenario.approach == Approach::Network) {
        result = run_network(scenario, *resolve_view_factors(scenario));
    } else {
        result = run_independent(scenario);
    }
    result.metadata["approach"] = to_string(scenario.approach);
    result.metadata["mode"] = to_string(scenario.process.mode);
    if (scenario.approach == Approach::Network || scenario.approach == Approach::Simplified) {
        result.metadata["view_factors"] = to_string(scenario.vf_source);
        if (scenario.vf_source == ViewFactorSource::MonteCarlo) {
            result.metadata["seed"] = std::to_string(scenario.mc.seed);
            result.metadata["n_rays"] = std::to_string(scenario.mc.n_rays);
        }
    }
    result.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

VialOutcome simulate_vial(const Scenario& scenario, std::size_t vial) {
    if (vial >= scenario.scene.layout.size()) {
        throw Error(ErrorKind::InvalidArgument, "vial index out of range");
    }
    if (scenario.approach == Approach::Network) return simulate(scenario).vials[vial];
    const std::vector<double> resistance = independent_resistances(scenario);
    VialResult r;
    try {
        r = run_one(scenario, resistance[vial]);
    } catch (const Error& e) {
        rethrow_for_vial(vial, e);
    }
    return {r.t_m, r.t_dry, classify_vials(scenario.scene.layout).labels[vial], r.absorbed_energy};
}

double absorbed_radiative_energy(const SimulationResult& result, std::size_t vial) {
    if (vial >= result.series.size() || result.series[vial].empty()) {
        throw Error(ErrorKind::MissingTimeSeries,
                    "no time series retained for vial " + std::to_string(vial));
    }
    return result.series[vial].back().absorbed;
}

ApproachComparison compare_approaches(const Scenario& scenario) {
    Scenario shared = scenario;
    shared.view_factors = resolve_view_factors(scenario);
    ApproachComparison out;
    shared.approach = Approach::Network;
    out.network = simulate(shared);
    shared.approach = Approach::Simplified;
    out.simplified = simulate(shared);
    for (std::size_t v = 0; v < out.network.vials.size(); ++v) {
        const double tn = out.network.vials[v].t_dry;
        out.relative_delta.push_back((out.simplified.vials[v].t_dry - tn) / tn);
    }
    return out;
}

}  // namespace lyorad
