#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lyorad/geometry.h"
#include "lyorad/model.h"
#include "lyorad/view_factors.h"

namespace lyorad {

enum class Approach { None, Simplified, Hybrid, Network };
enum class ViewFactorSource { Analytical, MonteCarlo, File };

const char* to_string(Approach approach) noexcept;
const char* to_string(ViewFactorSource source) noexcept;

// Per-vial lumped radiation resistances fitted to reference drying times.
struct HybridMap {
    std::vector<double> r_rad;   // 1/m^2, one per vial
    std::vector<int> row;
    std::vector<int> col;
    double training_T2 = 0.0;
    std::string source;          // provenance of the reference data

    bool operator==(const HybridMap&) const = default;
};

struct Scenario {
    Scene scene;
    MaterialProperties material;
    ProcessSettings process;
    VialGeometry vial;
    NumericsConfig numerics;
    Approach approach = Approach::None;
    ViewFactorSource vf_source = ViewFactorSource::MonteCarlo;
    McConfig mc;
    std::string vf_file;
    std::optional<HybridMap> hybrid;
    bool hold_done_at_tm = false;
    double series_interval = 0.0;   // s; 0 keeps no time series

    // Precomputed matrix; resolved from vf_source when absent.
    std::shared_ptr<const ViewFactorMatrix> view_factors;

    bool operator==(const Scenario&) const = default;
};

// Matrix for the scenario's scene, honoring a precomputed one.
std::shared_ptr<const ViewFactorMatrix> resolve_view_factors(const Scenario& scenario);

// The vial area in the scene always follows the vial geometry.
Scene effective_scene(const Scenario& scenario);

struct VialOutcome {
    double t_m = 0.0;     // s
    double t_dry = 0.0;   // s
    VialLabel label = VialLabel::Inner;
    double absorbed_energy = 0.0;   // J
};

struct SimulationResult {
    std::vector<VialOutcome> vials;
    std::vector<std::vector<SeriesSample>> series;   // empty unless requested
    std::map<std::string, std::string> metadata;
    double wall_clock_seconds = 0.0;
};

SimulationResult simulate(const Scenario& scenario);

// One vial's outcome. Independent approaches simulate only that vial; the network runs all.
VialOutcome simulate_vial(const Scenario& scenario, std::size_t vial);

// Absorbed radiative energy of one vial from its retained time series.
double absorbed_radiative_energy(const SimulationResult& result, std::size_t vial);

struct ApproachComparison {
    SimulationResult network;
    SimulationResult simplified;
    std::vector<double> relative_delta;   // (t_simplified - t_network) / t_network per vial
};

ApproachComparison compare_approaches(const Scenario& scenario);

// Resistance used by the simplified approach for each vial; +inf for a fully shielded vial.
std::vector<double> simplified_resistances(const Scenario& scenario, const ViewFactorMatrix& vf);

}  // namespace lyorad
