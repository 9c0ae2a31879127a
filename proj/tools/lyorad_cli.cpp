#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lyorad/config.h"
#include "lyorad/error.h"
#include "lyorad/estimation.h"
#include "lyorad/parallel.h"
#include "lyorad/results.h"
#include "lyorad/units.h"
#include "lyorad/validation.h"

namespace fs = std::filesystem;
using namespace lyorad;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;

bool is_config_error(ErrorKind k) {
    return k == ErrorKind::SchemaError || k == ErrorKind::UnitError || k == ErrorKind::FileError;
}

std::optional<Approach> approach_from(const std::string& s) {
    if (s == "none") return Approach::None;
    if (s == "simplified") return Approach::Simplified;
    if (s == "hybrid") return Approach::Hybrid;
    if (s == "network") return Approach::Network;
    return std::nullopt;
}

void print_summary(const SimulationResult& r, const Scenario& s) {
    double lo = 1e300, hi = 0.0;
    for (const VialOutcome& o : r.vials) {
        lo = std::min(lo, o.t_dry);
        hi = std::max(hi, o.t_dry);
    }
    std::printf("%zu vials, approach %s, mode %s: t_dry %.3f .. %.3f h (%.1f s)\n", r.vials.size(),
                to_string(s.approach), to_string(s.process.mode), lo / 3600.0, hi / 3600.0,
                r.wall_clock_seconds);
}

int cmd_simulate(const std::string& config, const std::string& approach, std::string out,
                 double series) {
    ScenarioConfig cfg = load_config(config);
    if (!approach.empty()) {
        const auto a = approach_from(approach);
        if (!a) throw Error(ErrorKind::SchemaError, "--approach: unknown approach '" + approach + "'");
        cfg.scenario.approach = *a;
    }
    if (series > 0.0) cfg.scenario.series_interval = series;
    if (out.empty()) out = cfg.output_dir.empty() ? "out/" + cfg.name : cfg.output_dir;
    const SimulationResult r = simulate(cfg.scenario);
    const ResultBundle b = export_results(r, cfg.scenario, out);
    print_summary(r, cfg.scenario);
    std::printf("wrote %s\n", b.summary_path.c_str());
    return kOk;
}

int cmd_viewfactors(const std::string& config, const std::string& out) {
    const ScenarioConfig cfg = load_config(config);
    const auto vf = resolve_view_factors(cfg.scenario);
    write_view_factor_csv(out, *vf);
    std::printf("%zu surfaces, summation error %.2e, reciprocity error %.2e\n", vf->size(),
                vf->max_summation_error(), vf->max_reciprocity_error());
    return kOk;
}

std::size_t vial_index(const nlohmann::json& j, const Layout& layout) {
    if (j.is_number_unsigned()) {
        const auto v = j.get<std::size_t>();
        if (v >= layout.size()) throw Error(ErrorKind::SchemaError, "vial index out of range");
        return v;
    }
    if (!j.is_string()) throw Error(ErrorKind::SchemaError, "vial must be an index or a label");
    const std::string s = j.get<std::string>();
    if (s == "corner") return reference_vials(layout, VialLabel::Corner).front();
    if (s == "edge") return reference_vials(layout, VialLabel::Edge).front();
    if (s == "center") return reference_vials(layout, VialLabel::Inner).front();
    throw Error(ErrorKind::SchemaError, "unknown vial label '" + s + "'");
}

double quantity_field(const nlohmann::json& j, Quantity q) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_quantity(j.get<std::string>(), q);
    throw Error(ErrorKind::SchemaError, "expected a number or a quantity string");
}

std::vector<double> read_reference_times(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::FileError, "cannot open " + path);
    // Either a summary CSV from simulate (t_dry_hours column) or one time in hours per line.
    std::string line;
    std::getline(in, line);
    std::vector<double> t;
    int column = -1;
    if (line.find("t_dry_hours") != std::string::npos) {
        std::stringstream ss(line);
        std::string cell;
        for (int k = 0; std::getline(ss, cell, ','); ++k) {
            if (cell == "t_dry_hours") column = k;
        }
    } else {
        t.push_back(std::stod(line) * 3600.0);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (column < 0) {
            t.push_back(std::stod(line) * 3600.0);
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        for (int k = 0; std::getline(ss, cell, ','); ++k) {
            if (k == column) t.push_back(std::stod(cell) * 3600.0);
        }
    }
    if (t.size() != n) {
        throw Error(ErrorKind::SchemaError, path + ": expected " + std::to_string(n) + " drying times");
    }
    return t;
}

int cmd_fit(const std::string& problem_path) {
    std::ifstream in(problem_path);
    if (!in) throw Error(ErrorKind::FileError, "cannot open " + problem_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SchemaError, problem_path + ": " + e.what());
    }
    const fs::path base = fs::path(problem_path).parent_path();
    const auto resolve = [&](const std::string& p) { return (base / p).string(); };
    const std::string kind = j.value("kind", "scalar");
    const ScenarioConfig cfg = load_config(resolve(j.at("config").get<std::string>()));

    if (kind == "scalar") {
        FitProblem p;
        p.scenario = cfg.scenario;
        p.parameter = j.at("parameter").get<std::string>();
        p.lower = j.at("lower").get<double>();
        p.upper = j.at("upper").get<double>();
        for (const auto& t : j.at("targets")) {
            FitTarget target;
            const std::string obs = t.value("observable", "t_dry");
            if (obs == "t_dry") target.observable = Observable::DryingTime;
            else if (obs == "t_m") target.observable = Observable::SwitchTime;
            else throw Error(ErrorKind::SchemaError, "unknown observable '" + obs + "'");
            target.vial = vial_index(t.at("vial"), p.scenario.scene.layout);
            target.value = quantity_field(t.at("value"), Quantity::Time);
            p.targets.push_back(target);
        }
        const FitResult r = fit_scalar(p);
        std::printf("%s = %.6g (rms residual %.3f s, %d evaluations)\n", p.parameter.c_str(), r.value,
                    r.residual, r.evaluations);
        return kOk;
    }
    if (kind == "hybrid") {
        Scenario s = cfg.scenario;
        std::vector<double> t;
        std::string source;
        if (j.contains("reference")) {
            t = read_reference_times(resolve(j.at("reference").get<std::string>()), s.scene.layout.size());
            source = j.at("reference").get<std::string>();
        } else {
            Scenario net = s;
            net.approach = Approach::Network;
            for (const VialOutcome& o : simulate(net).vials) t.push_back(o.t_dry);
            source = "network approach";
        }
        s.approach = Approach::Hybrid;
        const HybridTraining h = train_hybrid(s, t, source);
        const std::string out = resolve(j.value("output", "hybrid_map.csv"));
        write_hybrid_map(out, h.map);
        double worst = 0.0;
        for (double r : h.residual) worst = std::max(worst, std::abs(r));
        std::printf("trained %zu vials (%zu radiation-immune), worst residual %.2f s\nwrote %s\n",
                    h.map.r_rad.size(), h.immune.size(), worst, out.c_str());
        return kOk;
    }
    if (kind == "microwave") {
        MicrowaveData d;
        d.t_m = quantity_field(j.at("t_m"), Quantity::Time);
        d.t_dry = quantity_field(j.at("t_dry"), Quantity::Time);
        std::ifstream csv(resolve(j.at("samples").get<std::string>()));
        if (!csv) throw Error(ErrorKind::FileError, "cannot open " + j.at("samples").get<std::string>());
        std::string line;
        std::getline(csv, line);   // header: t_s,T_K
        while (std::getline(csv, line)) {
            if (line.empty()) continue;
            const auto comma = line.find(',');
            d.t.push_back(std::stod(line.substr(0, comma)));
            d.temperature.push_back(std::stod(line.substr(comma + 1)));
        }
        const MicrowaveFractions f = fit_microwave_fractions(d, cfg.scenario);
        std::printf("p1 = %.4g\np2 = %.4g\np3 = %.4g\n", f.p1, f.p2, f.p3);
        return kOk;
    }
    throw Error(ErrorKind::SchemaError, "unknown fit kind '" + kind + "'");
}

int cmd_validate(const std::string& filter, std::optional<std::uint64_t> seed, bool list) {
    if (list) {
        for (const CriterionInfo& c : validation_criteria()) std::printf("%2d  %s\n", c.id, c.name.c_str());
        return kOk;
    }
    ValidationOptions opt;
    opt.filter = filter;
    opt.seed = seed;
    opt.on_report = [](const CriterionReport& r) {
        std::printf("[%s] %2d %s (%.1f s)\n", r.pass() ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
        if (!r.error.empty()) std::printf("      error: %s\n", r.error.c_str());
        for (const CheckRow& c : r.checks) {
            std::printf("      %-4s %-62s expected %-10.6g computed %-12.6g [%.6g, %.6g] %s\n",
                        c.pass ? "ok" : "FAIL", c.item.c_str(), c.expected, c.computed, c.lower, c.upper,
                        c.unit.c_str());
        }
        std::fflush(stdout);
    };
    const auto reports = run_validation_suite(opt);
    if (reports.empty()) throw Error(ErrorKind::SchemaError, "no criterion matches '" + filter + "'");
    int failed = 0;
    for (const auto& r : reports) failed += r.pass() ? 0 : 1;
    std::printf("%zu criteria, %d failed\n", reports.size(), failed);
    return failed ? kFailed : kOk;
}

int cmd_sweep(const std::string& config, const std::string& param, const std::vector<std::string>& values,
              std::string out) {
    const ScenarioConfig cfg = load_config(config);
    std::vector<Scenario> runs;
    for (const std::string& v : values) {
        Scenario s = cfg.scenario;
        double x;
        try {
            x = std::stod(v);
        } catch (const std::exception&) {
            throw Error(ErrorKind::SchemaError, "--values: '" + v + "' is not a number");
        }
        set_parameter(s, param, x);
        s.view_factors = nullptr;
        runs.push_back(std::move(s));
    }
    if (out.empty()) out = cfg.output_dir.empty() ? "out/" + cfg.name + "_sweep" : cfg.output_dir;
    // One matrix serves every run unless the sweep changes the geometry.
    if (runs.front().approach == Approach::Network || runs.front().approach == Approach::Simplified) {
        const auto vf = resolve_view_factors(runs.front());
        for (Scenario& s : runs) s.view_factors = vf;
    }
    std::vector<SimulationResult> results(runs.size());
    parallel_for(runs.size(), [&](std::size_t i) { results[i] = simulate(runs[i]); },
                 std::max(1u, worker_count() / 4));
    std::printf("%-12s %-10s %-10s %-10s\n", param.c_str(), "min_h", "max_h", "mean_h");
    for (std::size_t i = 0; i < runs.size(); ++i) {
        export_results(results[i], runs[i], (fs::path(out) / (param + "=" + values[i])).string());
        double lo = 1e300, hi = 0.0, sum = 0.0;
        for (const VialOutcome& o : results[i].vials) {
            lo = std::min(lo, o.t_dry);
            hi = std::max(hi, o.t_dry);
            sum += o.t_dry;
        }
        std::printf("%-12s %-10.4f %-10.4f %-10.4f\n", values[i].c_str(), lo / 3600.0, hi / 3600.0,
                    sum / 3600.0 / static_cast<double>(results[i].vials.size()));
    }
    std::printf("wrote %s\n", out.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lyorad: radiation-coupled primary drying of vial arrays"};
    app.set_version_flag("--version", std::string(library_version()));
    app.require_subcommand(1);

    std::string config, approach, out, problem, filter, param;
    std::vector<std::string> values;
    double series = 0.0;
    std::uint64_t seed = 0;
    bool list = false;

    auto* sim = app.add_subcommand("simulate", "Run a scenario and write summary, series and metadata");
    sim->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
    sim->add_option("--approach", approach, "none, simplified, hybrid or network");
    sim->add_option("--out", out, "Output directory");
    sim->add_option("--series", series, "Keep a time series sampled every this many seconds");

    auto* vf = app.add_subcommand("viewfactors", "Compute the view-factor matrix of a scene");
    vf->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
    vf->add_option("--out", out, "CSV path")->required();

    auto* fit = app.add_subcommand("fit", "Estimate parameters from a fit problem file");
    fit->add_option("--problem", problem, "Fit problem file")->required()->check(CLI::ExistingFile);

    auto* val = app.add_subcommand("validate", "Run the acceptance criteria");
    val->add_option("--filter", filter, "Criterion id or name substring");
    auto* seed_opt = val->add_option("--seed", seed, "Monte Carlo seed");
    val->add_flag("--list", list, "List the criteria");

    auto* sweep = app.add_subcommand("sweep", "Run a scenario over values of one parameter");
    sweep->add_option("--config", config, "Scenario file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--param", param, "Parameter, e.g. chamber.T2")->required();
    sweep->add_option("--values", values, "Values in SI units")->required()->delimiter(',');
    sweep->add_option("--out", out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*sim) return cmd_simulate(config, approach, out, series);
        if (*vf) return cmd_viewfactors(config, out);
        if (*fit) return cmd_fit(problem);
        if (*val) return cmd_validate(filter, *seed_opt ? std::optional(seed) : std::nullopt, list);
        if (*sweep) return cmd_sweep(config, param, values, out);
    } catch (const Error& e) {
        std::cerr << "lyorad: " << e.what() << '\n';
        return is_config_error(e.kind()) ? kConfigError : kFailed;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "lyorad: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "lyorad: " << e.what() << '\n';
        return kFailed;
    }
    return kOk;
}
