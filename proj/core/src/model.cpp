#include "lyorad/model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lyorad/error.h"

namespace lyorad {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

// Thomas algorithm; overwrites diag and rhs, solution left in rhs.
void solve_tridiagonal(std::span<const double> lower, std::span<double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
}

}  // namespace

const char* to_string(DryingMode mode) noexcept {
    switch (mode) {
        case DryingMode::CFD: return "CFD";
        case DryingMode::MFD: return "MFD";
        case DryingMode::HFD: return "HFD";
    }
    return "?";
}

const char* to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::Heating: return "heating";
        case Stage::Sublimating: return "sublimating";
        case Stage::Done: return "done";
    }
    return "?";
}

void MaterialProperties::validate() const {
    require(rho > 0 && rho_d > 0 && k > 0 && cp > 0 && dh_sub > 0,
            "material properties must be strictly positive");
    require(rho > rho_d, "frozen density must exceed dried density");
    require(eps_vial > 0 && eps_vial < 1, "vial emissivity must lie in (0, 1)");
}

void ProcessSettings::validate() const {
    require(h >= 0, "heat-transfer coefficient must be non-negative");
    require(Q >= 0, "microwave power must be non-negative");
    require(p1 >= 0 && p2 >= 0 && p3 >= 0, "absorbed fractions must be non-negative");
    require(Tb_max >= Tb0, "shelf plateau must not be below the initial shelf temperature");
    require(ramp >= 0, "shelf ramp rate must be non-negative");
    require(T0 > 0 && Tm > 0 && Tb0 > 0, "temperatures must be positive");
}

ProcessSettings ProcessSettings::effective() const {
    ProcessSettings out = *this;
    if (mode == DryingMode::CFD) out.Q = 0.0;
    if (mode == DryingMode::MFD) out.h = 0.0;
    return out;
}

VialGeometry VialGeometry::from_dimensions(double d, double L, std::optional<double> area,
                                           std::optional<double> volume) {
    VialGeometry g;
    g.d = d;
    g.L = L;
    g.A1 = area.value_or(std::numbers::pi * d * L);
    g.V = volume.value_or(std::numbers::pi * d * d * L / 4.0);
    return g;
}

void VialGeometry::validate() const {
    require(d > 0 && L > 0, "vial diameter and product height must be positive");
    require(A1 > 0, "vial area must be positive");
    require(V > 0, "product volume must be positive");
}

void NumericsConfig::validate() const {
    require(nodes >= 3, "at least three grid nodes are required");
    require(dt > 0, "time step must be positive");
    require(tol_event > 0, "event tolerance must be positive");
    require(max_time > 0, "time horizon must be positive");
}

double shelf_temperature(double t, const ProcessSettings& settings) {
    return std::min(settings.ramp * t + settings.Tb0, settings.Tb_max);
}

double shelf_temperature_integral(double t0, double t1, const ProcessSettings& settings) {
    const auto ramp_part = [&](double a, double b) {
        return settings.Tb0 * (b - a) + 0.5 * settings.ramp * (b * b - a * a);
    };
    if (settings.ramp <= 0.0) return std::min(settings.Tb0, settings.Tb_max) * (t1 - t0);
    const double t_cap = (settings.Tb_max - settings.Tb0) / settings.ramp;
    if (t1 <= t_cap) return ramp_part(t0, t1);
    if (t0 >= t_cap) return settings.Tb_max * (t1 - t0);
    return ramp_part(t0, t_cap) + settings.Tb_max * (t1 - t_cap);
}

PowerDensities power_densities(const ProcessSettings& settings, const VialGeometry& geom) {
    const ProcessSettings eff = settings.effective();
    const double qv = eff.Q / geom.V;
    return {eff.p1 * qv, eff.p2 * qv, eff.p3 * qv};
}

VialState VialState::initial(const ProcessSettings& settings, const NumericsConfig& num) {
    VialState st;
    st.T.assign(static_cast<std::size_t>(num.nodes), settings.T0);
    st.T_product = settings.T0;
    return st;
}

double node_average(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n == 1) return values[0];
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < n; ++i) sum += values[i];
    return sum / static_cast<double>(n - 1);
}

VialModel::VialModel(const MaterialProperties& mat, const ProcessSettings& settings,
                     const VialGeometry& geom, const NumericsConfig& num)
    : VialModel(mat, settings, geom, num, VialState::initial(settings, num)) {}

VialModel::VialModel(const MaterialProperties& mat, const ProcessSettings& settings,
                     const VialGeometry& geom, const NumericsConfig& num, VialState initial)
    : mat_(mat),
      settings_(settings.effective()),
      geom_(geom),
      num_(num),
      power_(power_densities(settings, geom)),
      state_(std::move(initial)) {
    mat_.validate();
    settings_.validate();
    geom_.validate();
    num_.validate();
    require(state_.T.size() == static_cast<std::size_t>(num_.nodes),
            "initial profile size must match the node count");
    const auto n = static_cast<std::size_t>(num_.nodes);
    lower_.resize(n);
    diag_.resize(n);
    upper_.resize(n);
    rhs_.resize(n);
}

double VialModel::product_temperature(double t) const {
    const double t_m = state_.t_m.value_or(t);
    return settings_.Tm + power_.hv3 / (mat_.rho * mat_.cp) * (t - t_m);
}

void VialModel::surface_temperatures(std::span<double> out) const {
    if (state_.stage == Stage::Heating) {
        std::copy(state_.T.begin(), state_.T.end(), out.begin());
    } else {
        std::fill(out.begin(), out.end(), state_.T_product);
    }
}

void VialModel::step(double dt, std::span<const double> q_nodes) {
    double remaining = dt;
    while (remaining > 0.0 && state_.stage != Stage::Done) {
        const Stage before = state_.stage;
        const double used = advance_within_stage(remaining, q_nodes);
        remaining -= used;
        if (used <= 0.0 && state_.stage == before) break;
    }
    if (state_.stage == Stage::Done) state_.t += remaining;
}

double VialModel::advance_within_stage(double dt, std::span<const double> q_nodes) {
    if (state_.t > num_.max_time) {
        if (state_.stage == Stage::Heating) {
            throw Error(ErrorKind::NoSublimationReached,
                        "top surface did not reach the sublimation temperature within " +
                            std::to_string(num_.max_time) + " s");
        }
        throw Error(ErrorKind::InvalidArgument,
                    "drying did not complete within " + std::to_string(num_.max_time) + " s");
    }
    switch (state_.stage) {
        case Stage::Heating: return step_heating(dt, q_nodes);
        case Stage::Sublimating: return step_sublimation(dt, node_average(q_nodes));
        case Stage::Done: state_.t += dt; return dt;
    }
    return dt;
}

double VialModel::step_heating(double dt, std::span<const double> q_nodes) {
    const auto n = static_cast<std::size_t>(num_.nodes);
    const double dx = geom_.L / static_cast<double>(n - 1);
    const double heat_cap = mat_.rho * mat_.cp;
    const double a = mat_.k * dt / (heat_cap * dx * dx);
    const double biot = 2.0 * a * dx * settings_.h / mat_.k;
    const double t_new = state_.t + dt;

    for (std::size_t i = 0; i < n; ++i) {
        const double q = q_nodes.empty() ? 0.0 : q_nodes[i];
        lower_[i] = -a;
        upper_[i] = -a;
        diag_[i] = 1.0 + 2.0 * a;
        rhs_[i] = state_.T[i] + dt / heat_cap * (power_.hv1 - q / geom_.V);
    }
    // Adiabatic top: ghost node mirrors node 1.
    upper_[0] = -2.0 * a;
    lower_[0] = 0.0;
    // Robin bottom: ghost node eliminated with the shelf flux.
    lower_[n - 1] = -2.0 * a;
    upper_[n - 1] = 0.0;
    diag_[n - 1] += biot;
    rhs_[n - 1] += biot * shelf_temperature(t_new, settings_);

    solve_tridiagonal(lower_, diag_, upper_, rhs_);

    const double q_avg = q_nodes.empty() ? 0.0 : node_average(q_nodes);
    const double top_old = state_.T[0];
    const double top_new = rhs_[0];
    const double target = settings_.Tm;
    if (top_new >= target - num_.tol_event * target) {
        double frac = 1.0;
        if (top_new > top_old && top_old < target) {
            frac = std::clamp((target - top_old) / (top_new - top_old), 0.0, 1.0);
        } else if (top_old >= target) {
            frac = 0.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            state_.T[i] += frac * (rhs_[i] - state_.T[i]);
        }
        const double used = frac * dt;
        state_.t += used;
        absorbed_ -= q_avg * used;
        state_.stage = Stage::Sublimating;
        state_.t_m = state_.t;
        state_.s = 0.0;
        state_.T_product = settings_.Tm;
        return used;
    }
    std::copy(rhs_.begin(), rhs_.end(), state_.T.begin());
    state_.t = t_new;
    absorbed_ -= q_avg * dt;
    return dt;
}

double VialModel::step_sublimation(double dt, double q) {
    const double t0 = state_.t;
    const double t1 = t0 + dt;
    const double t_m = *state_.t_m;
    const double heat_cap = mat_.rho * mat_.cp;
    const double slope = power_.hv3 / heat_cap;
    // Exact integral of h (Tb - T) with Tb piecewise linear and T linear in time.
    const double product_integral =
        settings_.Tm * dt + 0.5 * slope * ((t1 - t_m) * (t1 - t_m) - (t0 - t_m) * (t0 - t_m));
    const double shelf_heat =
        settings_.h * (shelf_temperature_integral(t0, t1, settings_) - product_integral);
    const double heat = shelf_heat + (power_.hv2 * geom_.L - q * geom_.L / geom_.V) * dt;
    if (heat <= 0.0) {
        throw Error(ErrorKind::NegativeSublimationRate,
                    "net heat to the sublimation front is non-positive at t = " +
                        std::to_string(t0) + " s");
    }
    const double ds = heat / ((mat_.rho - mat_.rho_d) * mat_.dh_sub);
    const double L = geom_.L;
    if (state_.s + ds >= L - num_.tol_event * L) {
        const double frac = std::clamp((L - state_.s) / ds, 0.0, 1.0);
        const double used = frac * dt;
        state_.t = t0 + used;
        state_.s = L;
        state_.stage = Stage::Done;
        state_.t_dry = state_.t;
        state_.T_product = hold_done_at_tm_ ? settings_.Tm : product_temperature(state_.t);
        absorbed_ -= q * used;
        return used;
    }
    state_.s += ds;
    state_.t = t1;
    state_.T_product = product_temperature(t1);
    absorbed_ -= q * dt;
    return dt;
}

HeatingOutcome simulate_heating_stage(VialState state, const MaterialProperties& mat,
                                      const ProcessSettings& settings, const VialGeometry& geom,
                                      const NodeRadiationSource& rad_source,
                                      const NumericsConfig& num) {
    require(state.stage == Stage::Heating, "heating stage requires a heating-stage state");
    VialModel model(mat, settings, geom, num, std::move(state));
    std::vector<double> q(static_cast<std::size_t>(num.nodes), 0.0);
    while (model.state().stage == Stage::Heating) {
        if (rad_source) rad_source(model.state().t, model.state().T, q);
        model.advance_within_stage(num.dt, q);
    }
    HeatingOutcome out{model.state(), *model.state().t_m};
    return out;
}

SublimationOutcome simulate_sublimation_stage(VialState state, const MaterialProperties& mat,
                                              const ProcessSettings& settings,
                                              const VialGeometry& geom,
                                              const ScalarRadiationSource& rad_source,
                                              const NumericsConfig& num) {
    require(state.stage == Stage::Sublimating && state.t_m.has_value(),
            "sublimation stage requires a sublimating state with a switching time");
    VialModel model(mat, settings, geom, num, std::move(state));
    std::vector<double> q(static_cast<std::size_t>(num.nodes), 0.0);
    while (model.state().stage == Stage::Sublimating) {
        const double qr = rad_source ? rad_source(model.state().t, model.state().T_product) : 0.0;
        std::fill(q.begin(), q.end(), qr);
        model.advance_within_stage(num.dt, q);
    }
    SublimationOutcome out{model.state(), *model.state().t_dry};
    return out;
}

VialResult simulate_single_vial(const MaterialProperties& mat, const ProcessSettings& settings,
                                const VialGeometry& geom, const RadiationSources& sources,
                                const NumericsConfig& num, double series_interval) {
    VialModel model(mat, settings, geom, num);
    const auto n = static_cast<std::size_t>(num.nodes);
    std::vector<double> q(n, 0.0);
    std::vector<double> temps(n);
    VialResult result;
    double next_sample = 0.0;

    while (model.state().stage != Stage::Done) {
        const VialState& st = model.state();
        if (st.stage == Stage::Heating) {
            if (sources.heating) {
                sources.heating(st.t, st.T, q);
            } else {
                std::fill(q.begin(), q.end(), 0.0);
            }
        } else {
            const double qr = sources.sublimation ? sources.sublimation(st.t, st.T_product) : 0.0;
            std::fill(q.begin(), q.end(), qr);
        }
        if (series_interval > 0.0 && st.t >= next_sample) {
            model.surface_temperatures(temps);
            result.series.push_back(
                {st.t, temps.front(), temps.back(), st.s, node_average(q), model.absorbed_energy()});
            next_sample += series_interval;
        }
        double remaining = num.dt;
        while (remaining > 0.0 && model.state().stage != Stage::Done) {
            const Stage before = model.state().stage;
            remaining -= model.advance_within_stage(remaining, q);
            if (model.state().stage != before && model.state().stage == Stage::Sublimating) {
                const VialState& sw = model.state();
                const double qr =
                    sources.sublimation ? sources.sublimation(sw.t, sw.T_product) : 0.0;
                std::fill(q.begin(), q.end(), qr);
            }
        }
    }
    const VialState& st = model.state();
    result.t_m = *st.t_m;
    result.t_dry = *st.t_dry;
    result.absorbed_energy = model.absorbed_energy();
    if (series_interval > 0.0) {
        result.series.push_back(
            {st.t, st.T_product, st.T_product, st.s, 0.0, model.absorbed_energy()});
    }
    return result;
}

}  // namespace lyorad
