#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lyorad {

enum class DryingMode { CFD, MFD, HFD };

const char* to_string(DryingMode mode) noexcept;

// Thermophysical properties of the frozen product and the vial surface.
// Defaults are the reference formulation (water ice in a glass vial).
struct MaterialProperties {
    double rho = 917.0;       // frozen density, kg/m^3
    double rho_d = 63.0;      // dried density, kg/m^3
    double k = 2.30;          // thermal conductivity, W/(m K)
    double cp = 1967.8;       // heat capacity, J/(kg K)
    double dh_sub = 2.84e6;   // latent heat of sublimation, J/kg
    double eps_vial = 0.8;    // vial surface emissivity

    void validate() const;
    bool operator==(const MaterialProperties&) const = default;
};

struct ProcessSettings {
    double h = 65.0;             // shelf heat-transfer coefficient, W/(m^2 K)
    double T0 = 236.85;          // initial product temperature, K
    double Tb0 = 236.85;         // initial shelf temperature, K
    double Tb_max = 281.85;      // shelf temperature plateau, K
    double ramp = 1.0 / 60.0;    // shelf ramp rate, K/s
    double Tm = 256.15;          // sublimation temperature, K
    double Q = 85.0;             // microwave output power, W
    double p1 = 3.73e-4;         // absorbed fraction, heating stage
    double p2 = 8.62e-3;         // absorbed fraction driving sublimation
    double p3 = 2.5e-5;          // absorbed fraction heating the product during sublimation
    DryingMode mode = DryingMode::CFD;

    void validate() const;
    // Copy with the mode constraints applied: CFD has no microwave power, MFD no shelf contact.
    ProcessSettings effective() const;
    bool operator==(const ProcessSettings&) const = default;
};

struct VialGeometry {
    double d = 0.01;      // vial diameter, m
    double L = 0.042;     // product height, m
    double A1 = 1.3e-3;   // lateral radiating area, m^2
    double V = 3.3e-6;    // product volume, m^3

    // A1 and V default to the cylinder values pi d L and pi d^2 L / 4.
    static VialGeometry from_dimensions(double d, double L,
                                        std::optional<double> area = std::nullopt,
                                        std::optional<double> volume = std::nullopt);
    void validate() const;
    bool operator==(const VialGeometry&) const = default;
};

struct NumericsConfig {
    int nodes = 101;
    double dt = 1.0;               // s
    double tol_event = 1e-6;       // relative to the event scale (Tm or L)
    double max_time = 200.0 * 3600.0;

    void validate() const;
    bool operator==(const NumericsConfig&) const = default;
};

struct PowerDensities {
    double hv1 = 0.0;
    double hv2 = 0.0;
    double hv3 = 0.0;
};

double shelf_temperature(double t, const ProcessSettings& settings);

// Exact integral of the shelf temperature over [t0, t1].
double shelf_temperature_integral(double t0, double t1, const ProcessSettings& settings);

// Microwave volumetric heating split by absorbed fraction; zero in CFD mode.
PowerDensities power_densities(const ProcessSettings& settings, const VialGeometry& geom);

enum class Stage { Heating, Sublimating, Done };

const char* to_string(Stage stage) noexcept;

struct VialState {
    Stage stage = Stage::Heating;
    double t = 0.0;
    std::vector<double> T;   // node 0 is the top surface, node N-1 the bottom
    double s = 0.0;
    double T_product = 0.0;  // uniform product temperature once sublimating
    std::optional<double> t_m;
    std::optional<double> t_dry;

    static VialState initial(const ProcessSettings& settings, const NumericsConfig& num);
};

// Net radiation leaving the vial, in W, evaluated per grid node from node temperatures.
using NodeRadiationSource =
    std::function<void(double t, std::span<const double> T, std::span<double> q_out)>;
// Net radiation leaving a uniform-temperature vial, in W.
using ScalarRadiationSource = std::function<double(double t, double T)>;

struct SeriesSample {
    double t = 0.0;
    double T_top = 0.0;
    double T_bottom = 0.0;
    double s = 0.0;
    double q_rad = 0.0;      // W, net leaving the vial
    double absorbed = 0.0;   // J, cumulative radiative energy gained so far
};

struct VialResult {
    double t_m = 0.0;
    double t_dry = 0.0;
    double absorbed_energy = 0.0;   // J, positive when the vial gains heat
    std::vector<SeriesSample> series;
};

// Stepper for one vial. The radiation load for each step is supplied by the caller
// (lagged at the start of the step), so several vials can advance on a shared clock.
class VialModel {
public:
    VialModel(const MaterialProperties& mat, const ProcessSettings& settings,
              const VialGeometry& geom, const NumericsConfig& num);
    VialModel(const MaterialProperties& mat, const ProcessSettings& settings,
              const VialGeometry& geom, const NumericsConfig& num, VialState initial);

    const VialState& state() const noexcept { return state_; }
    int nodes() const noexcept { return num_.nodes; }
    double absorbed_energy() const noexcept { return absorbed_; }

    // Temperatures the vial presents to the radiation model, one per node.
    void surface_temperatures(std::span<double> out) const;

    // Advance by dt with q_nodes the net radiation leaving the vial (W) at each node.
    // A stage switch inside the step is located by interpolation and the remainder of
    // the step continues in the next stage.
    void step(double dt, std::span<const double> q_nodes);

    // Like step(), but stops at a stage switch. Returns the time actually advanced.
    double advance_within_stage(double dt, std::span<const double> q_nodes);

    // Hold finished vials at Tm instead of their final product temperature.
    void set_hold_done_at_tm(bool hold) noexcept { hold_done_at_tm_ = hold; }

private:
    double step_heating(double dt, std::span<const double> q_nodes);
    double step_sublimation(double dt, double q);
    double product_temperature(double t) const;

    MaterialProperties mat_;
    ProcessSettings settings_;
    VialGeometry geom_;
    NumericsConfig num_;
    PowerDensities power_;
    VialState state_;
    double absorbed_ = 0.0;
    bool hold_done_at_tm_ = false;
    std::vector<double> lower_, diag_, upper_, rhs_;
};

// Trapezoid-weighted node average, the vial-total of a per-node radiation field.
double node_average(std::span<const double> values);

struct HeatingOutcome {
    VialState state;
    double t_m = 0.0;
};

HeatingOutcome simulate_heating_stage(VialState state, const MaterialProperties& mat,
                                      const ProcessSettings& settings, const VialGeometry& geom,
                                      const NodeRadiationSource& rad_source,
                                      const NumericsConfig& num);

struct SublimationOutcome {
    VialState state;
    double t_dry = 0.0;
};

SublimationOutcome simulate_sublimation_stage(VialState state, const MaterialProperties& mat,
                                              const ProcessSettings& settings,
                                              const VialGeometry& geom,
                                              const ScalarRadiationSource& rad_source,
                                              const NumericsConfig& num);

struct RadiationSources {
    NodeRadiationSource heating;       // empty means no radiation
    ScalarRadiationSource sublimation; // empty means no radiation
};

// Heating then sublimation for one vial; series_interval <= 0 disables the series.
VialResult simulate_single_vial(const MaterialProperties& mat, const ProcessSettings& settings,
                                const VialGeometry& geom, const RadiationSources& sources,
                                const NumericsConfig& num, double series_interval = 0.0);

}  // namespace lyorad
