#include "lyorad/estimation.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lyorad/error.h"
#include "lyorad/parallel.h"

namespace lyorad {

namespace {

double* parameter_ref(Scenario& s, std::string_view name) {
    if (name == "process.h") return &s.process.h;
    if (name == "process.Tm") return &s.process.Tm;
    if (name == "process.Q") return &s.process.Q;
    if (name == "process.p1") return &s.process.p1;
    if (name == "process.p2") return &s.process.p2;
    if (name == "process.p3") return &s.process.p3;
    if (name == "chamber.T2") return &s.scene.chamber.T2;
    if (name == "chamber.eps_wall") return &s.scene.chamber.eps_wall;
    if (name == "material.eps_vial") return &s.material.eps_vial;
    if (name == "material.dh_sub") return &s.material.dh_sub;
    return nullptr;
}

bool needs_view_factors(Approach a) {
    return a == Approach::Network || a == Approach::Simplified;
}

constexpr double kGolden = 0.6180339887498949;

// Golden-section minimization of f on [a, b]; returns the best point evaluated.
std::pair<double, double> golden_section(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol, int& evaluations) {
    double best_x = a;
    double best_f = std::numeric_limits<double>::infinity();
    const auto eval = [&](double x) {
        const double v = f(x);
        ++evaluations;
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
        return v;
    };
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    for (int iter = 0; iter < 200; ++iter) {
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        if (b - a <= rel_tol * scale) break;
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = eval(d);
        }
    }
    return {best_x, best_f};
}

// Samples g over the bounds, requires strict monotonicity and a sign change, and returns
// the narrowest sampled bracket.
std::pair<double, double> bracket(const std::function<double(double)>& g, double lo, double hi,
                                  int samples, int& evaluations, const std::string& what) {
    std::vector<double> xs(static_cast<std::size_t>(samples));
    std::vector<double> gs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        gs[i] = g(xs[i]);
        ++evaluations;
    }
    const double dir = gs.back() - gs.front();
    for (std::size_t i = 1; i < gs.size(); ++i) {
        if (!((gs[i] - gs[i - 1]) * dir > 0.0)) {
            throw Error(ErrorKind::NoBracket, what + ": response is not strictly monotone over the bounds");
        }
    }
    if (gs.front() * gs.back() > 0.0) {
        throw Error(ErrorKind::NoBracket, what + ": target is outside the range reachable within the bounds");
    }
    for (std::size_t i = 1; i < gs.size(); ++i) {
        if (gs[i - 1] * gs[i] <= 0.0) return {xs[i - 1], xs[i]};
    }
    return {lo, hi};
}

double observe(const VialOutcome& o, Observable obs) {
    return obs == Observable::DryingTime ? o.t_dry : o.t_m;
}

Scenario with_resolved_view_factors(Scenario s) {
    if (needs_view_factors(s.approach)) s.view_factors = resolve_view_factors(s);
    return s;
}

}  // namespace

std::vector<std::string> fittable_parameters() {
    return {"process.h",  "process.Tm", "process.Q",        "process.p1",        "process.p2",
            "process.p3", "chamber.T2", "chamber.eps_wall", "material.eps_vial", "material.dh_sub"};
}

double get_parameter(const Scenario& scenario, std::string_view name) {
    double* p = parameter_ref(const_cast<Scenario&>(scenario), name);
    if (p == nullptr) throw Error(ErrorKind::SchemaError, "unknown parameter '" + std::string(name) + "'");
    return *p;
}

void set_parameter(Scenario& scenario, std::string_view name, double value) {
    double* p = parameter_ref(scenario, name);
    if (p == nullptr) throw Error(ErrorKind::SchemaError, "unknown parameter '" + std::string(name) + "'");
    *p = value;
}

const char* to_string(Observable observable) noexcept {
    return observable == Observable::DryingTime ? "t_dry" : "t_m";
}

void FitProblem::validate() const {
    get_parameter(scenario, parameter);
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
        throw Error(ErrorKind::InvalidArgument, "fit bounds must be finite and ordered");
    }
    if (targets.empty()) throw Error(ErrorKind::InvalidArgument, "fit needs at least one target");
    for (const FitTarget& t : targets) {
        if (!std::isfinite(t.value)) throw Error(ErrorKind::InvalidArgument, "target values must be finite");
        if (t.vial >= scenario.scene.layout.size()) {
            throw Error(ErrorKind::InvalidArgument, "target vial out of range");
        }
    }
}

FitResult fit_scalar(const FitProblem& problem) {
    problem.validate();
    Scenario s = with_resolved_view_factors(problem.scenario);
    const bool one_vial =
        s.approach != Approach::Network &&
        std::all_of(problem.targets.begin(), problem.targets.end(),
                    [&](const FitTarget& t) { return t.vial == problem.targets.front().vial; });

    // Signed residuals per target at x.
    const auto residuals = [&](double x) {
        set_parameter(s, problem.parameter, x);
        std::vector<double> r;
        if (one_vial) {
            const VialOutcome o = simulate_vial(s, problem.targets.front().vial);
            for (const FitTarget& t : problem.targets) r.push_back(observe(o, t.observable) - t.value);
        } else {
            const SimulationResult res = simulate(s);
            for (const FitTarget& t : problem.targets) {
                r.push_back(observe(res.vials[t.vial], t.observable) - t.value);
            }
        }
        return r;
    };
    const auto signed_sum = [&](double x) {
        double sum = 0.0;
        for (double v : residuals(x)) sum += v;
        return sum;
    };
    const auto squared = [&](double x) {
        double sum = 0.0;
        for (double v : residuals(x)) sum += v * v;
        return sum;
    };

    FitResult out;
    const auto [a, b] = bracket(signed_sum, problem.lower, problem.upper, 5, out.evaluations,
                                "fit of " + problem.parameter);
    const auto [x, f] = golden_section(squared, a, b, 1e-4, out.evaluations);
    out.value = x;
    out.residual = std::sqrt(f / static_cast<double>(problem.targets.size()));
    return out;
}

double fit_hybrid_resistance(const Scenario& scenario, std::size_t vial, double t_target) {
    Scenario s = scenario;
    s.approach = Approach::Hybrid;
    s.view_factors.reset();
    const std::size_t n = s.scene.layout.size();
    if (vial >= n) throw Error(ErrorKind::InvalidArgument, "vial index out of range");
    if (!s.hybrid || s.hybrid->r_rad.size() != n) {
        HybridMap map;
        map.r_rad.assign(n, kHybridResistanceCap);
        map.row = s.scene.layout.row;
        map.col = s.scene.layout.col;
        s.hybrid = std::move(map);
    }
    const auto t_at = [&](double log_r) {
        s.hybrid->r_rad[vial] = std::exp(log_r);
        return simulate_vial(s, vial).t_dry;
    };
    const double lo = 0.0;
    const double hi = std::log(kHybridResistanceCap);
    const double tol = s.numerics.dt;
    const double t_cap = t_at(hi);
    if (t_target >= t_cap) {
        if (t_target - t_cap <= tol) return kHybridResistanceCap;
        throw Error(ErrorKind::RadiationImmune,
                    "vial " + std::to_string(vial) + " dries no faster than without radiation");
    }
    int evaluations = 1;
    const auto [a, b] = bracket([&](double u) { return t_at(u) - t_target; }, lo, hi, 5,
                                evaluations, "hybrid fit of vial " + std::to_string(vial));
    const auto [u, f] = golden_section(
        [&](double x) {
            const double r = t_at(x) - t_target;
            return r * r;
        },
        a, b, 1e-4 / hi, evaluations);
    (void)f;
    return std::exp(u);
}

HybridTraining train_hybrid(const Scenario& scenario, const std::vector<double>& t_dry,
                            const std::string& source) {
    const std::size_t n = scenario.scene.layout.size();
    if (t_dry.size() != n) {
        throw Error(ErrorKind::InvalidArgument, "need one reference drying time per vial");
    }
    HybridTraining out;
    out.map.r_rad.assign(n, kHybridResistanceCap);
    out.map.row = scenario.scene.layout.row;
    out.map.col = scenario.scene.layout.col;
    out.map.training_T2 = scenario.scene.chamber.T2;
    out.map.source = source;
    std::vector<char> immune(n, 0);
    parallel_for(n, [&](std::size_t v) {
        try {
            out.map.r_rad[v] = fit_hybrid_resistance(scenario, v, t_dry[v]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::RadiationImmune) throw;
            immune[v] = 1;
        }
    });
    for (std::size_t v = 0; v < n; ++v) {
        if (immune[v]) out.immune.push_back(v);
    }
    Scenario check = scenario;
    check.approach = Approach::Hybrid;
    check.view_factors.reset();
    check.hybrid = out.map;
    const SimulationResult res = simulate(check);
    for (std::size_t v = 0; v < n; ++v) out.residual.push_back(res.vials[v].t_dry - t_dry[v]);
    return out;
}

void write_hybrid_map(const std::string& path, const HybridMap& map) {
    std::ofstream csv(path);
    if (!csv) throw Error(ErrorKind::IoError, "cannot write " + path);
    csv << "vial,row,col,R_rad_per_m2\n";
    csv.precision(17);
    for (std::size_t v = 0; v < map.r_rad.size(); ++v) {
        csv << v << ',' << (v < map.row.size() ? map.row[v] : 0) << ','
            << (v < map.col.size() ? map.col[v] : 0) << ',' << map.r_rad[v] << '\n';
    }
    std::ofstream meta(path + ".meta.json");
    if (!csv || !meta) throw Error(ErrorKind::IoError, "cannot write " + path);
    nlohmann::json j;
    j["training_T2_K"] = map.training_T2;
    j["source"] = map.source;
    j["vials"] = map.r_rad.size();
    meta << j.dump(2) << '\n';
}

HybridMap read_hybrid_map(const std::string& path) {
    std::ifstream csv(path);
    if (!csv) throw Error(ErrorKind::FileError, "cannot open hybrid map " + path);
    std::string line;
    std::getline(csv, line);
    if (line.rfind("vial,row,col,R_rad", 0) != 0) {
        throw Error(ErrorKind::SchemaError, path + ": expected header vial,row,col,R_rad_per_m2");
    }
    HybridMap map;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 4) throw Error(ErrorKind::SchemaError, path + ": malformed row '" + line + "'");
        try {
            if (std::stoul(cells[0]) != map.r_rad.size()) {
                throw Error(ErrorKind::SchemaError, path + ": vial indices must be consecutive from 0");
            }
            map.row.push_back(std::stoi(cells[1]));
            map.col.push_back(std::stoi(cells[2]));
            map.r_rad.push_back(std::stod(cells[3]));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::SchemaError, path + ": malformed row '" + line + "'");
        }
    }
    std::ifstream meta(path + ".meta.json");
    if (meta) {
        try {
            const nlohmann::json j = nlohmann::json::parse(meta);
            map.training_T2 = j.value("training_T2_K", 0.0);
            map.source = j.value("source", std::string());
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::SchemaError, path + ".meta.json: " + e.what());
        }
    }
    return map;
}

MicrowaveData microwave_data_from_result(const VialResult& result) {
    MicrowaveData d;
    d.t_m = result.t_m;
    d.t_dry = result.t_dry;
    for (const SeriesSample& s : result.series) {
        if (s.t > result.t_m && s.t < result.t_dry) {
            d.t.push_back(s.t);
            d.temperature.push_back(s.T_top);
        }
    }
    return d;
}

MicrowaveFractions fit_microwave_fractions(const MicrowaveData& data, const Scenario& scenario) {
    const ProcessSettings eff = scenario.process.effective();
    if (scenario.process.mode == DryingMode::CFD || eff.Q <= 0.0) return {};
    if (!(data.t_m > 0.0) || !(data.t_dry > data.t_m)) {
        throw Error(ErrorKind::InvalidArgument, "microwave data needs 0 < t_m < t_dry");
    }
    if (data.t.size() != data.temperature.size() || data.t.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "need at least two sublimation-stage samples");
    }
    const MaterialProperties& m = scenario.material;
    const VialGeometry& g = scenario.vial;

    // Least-squares slope of the sublimation temperature.
    const double n = static_cast<double>(data.t.size());
    double st = 0.0, sT = 0.0;
    for (std::size_t i = 0; i < data.t.size(); ++i) {
        st += data.t[i];
        sT += data.temperature[i];
    }
    const double mt = st / n, mT = sT / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < data.t.size(); ++i) {
        num += (data.t[i] - mt) * (data.temperature[i] - mT);
        den += (data.t[i] - mt) * (data.t[i] - mt);
    }
    if (!(den > 0.0)) throw Error(ErrorKind::InvalidArgument, "sublimation samples share one time");
    const double slope = std::max(num / den, 0.0);

    MicrowaveFractions out;
    out.p3 = slope * m.rho * m.cp * g.V / eff.Q;

    Scenario s = scenario;
    s.process.p3 = out.p3;
    const bool shelf = eff.h > 0.0;

    // Upper scales assume the microwave supplies all of the stage's heat.
    const double p1_scale = m.rho * m.cp * std::abs(s.process.Tm - s.process.T0) * g.V / (eff.Q * data.t_m);
    FitProblem p1;
    p1.scenario = s;
    p1.parameter = "process.p1";
    p1.lower = shelf ? 0.0 : 0.5 * p1_scale;
    p1.upper = 2.0 * p1_scale;
    p1.targets = {{Observable::SwitchTime, 0, data.t_m}};
    out.p1 = fit_scalar(p1).value;
    s.process.p1 = out.p1;

    const double p2_scale =
        (m.rho - m.rho_d) * m.dh_sub * g.V / (eff.Q * (data.t_dry - data.t_m));
    FitProblem p2;
    p2.scenario = s;
    p2.parameter = "process.p2";
    p2.lower = shelf ? 0.0 : 0.5 * p2_scale;
    p2.upper = 2.0 * p2_scale;
    p2.targets = {{Observable::DryingTime, 0, data.t_dry}};
    out.p2 = fit_scalar(p2).value;
    return out;
}

}  // namespace lyorad
