#include "lyorad/validation.h"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <random>

#include "lyorad/error.h"
#include "lyorad/estimation.h"
#include "lyorad/multi_vial.h"
#include "lyorad/radiation.h"

namespace lyorad {

namespace {

constexpr double kHour = 3600.0;

CheckRow within(std::string item, std::string unit, double expected, double tol, double computed) {
    CheckRow r{std::move(item), std::move(unit), expected, expected - tol, expected + tol, computed};
    r.pass = computed >= r.lower && computed <= r.upper;
    return r;
}

CheckRow between(std::string item, std::string unit, double expected, double lower, double upper,
                 double computed) {
    CheckRow r{std::move(item), std::move(unit), expected, lower, upper, computed};
    r.pass = computed >= lower && computed <= upper;
    return r;
}

CheckRow relative(std::string item, std::string unit, double expected, double rel, double computed) {
    return between(std::move(item), std::move(unit), expected, expected * (1.0 - rel),
                   expected * (1.0 + rel), computed);
}

double mean_of(const SimulationResult& r, const std::vector<std::size_t>& vials,
               double VialOutcome::*field) {
    double sum = 0.0;
    for (std::size_t v : vials) sum += r.vials[v].*field;
    return sum / static_cast<double>(vials.size());
}

// Suite-wide cache of view factors and shared runs.
class Context {
public:
    explicit Context(const ValidationOptions& options) : options_(options) {}

    Scenario base(DryingMode mode, int n, double c = 0.005) const {
        Scenario s;
        s.material = options_.material;
        s.process.mode = mode;
        s.scene.layout = build_rectangular_layout(n, n, s.vial.d, c, s.scene.chamber.side);
        s.approach = Approach::Network;
        if (options_.seed) s.mc.seed = *options_.seed;
        return s;
    }

    std::shared_ptr<const ViewFactorMatrix> view_factors(const Scenario& s) {
        const Scene scene = effective_scene(s);
        for (const auto& [key, vf] : vf_cache_) {
            if (key.first == scene && key.second == s.mc) return vf;
        }
        auto vf = resolve_view_factors(s);
        vf_cache_.push_back({{scene, s.mc}, vf});
        return vf;
    }

    SimulationResult run(Scenario s) {
        if (s.approach == Approach::Network || s.approach == Approach::Simplified) {
            s.view_factors = view_factors(s);
        }
        return simulate(s);
    }

    const SimulationResult& cached(const std::string& key, const Scenario& s) {
        auto it = runs_.find(key);
        if (it == runs_.end()) it = runs_.emplace(key, run(s)).first;
        return it->second;
    }

    const SimulationResult& cfd10_network() { return cached("cfd10_network", base(DryingMode::CFD, 10)); }
    const SimulationResult& cfd10_simplified() {
        Scenario s = base(DryingMode::CFD, 10);
        s.approach = Approach::Simplified;
        return cached("cfd10_simplified", s);
    }
    const SimulationResult& hfd10_network() { return cached("hfd10_network", base(DryingMode::HFD, 10)); }

private:
    const ValidationOptions& options_;
    std::vector<std::pair<std::pair<Scene, McConfig>, std::shared_ptr<const ViewFactorMatrix>>> vf_cache_;
    std::map<std::string, SimulationResult> runs_;
};

std::size_t corner(const Layout& l) { return reference_vials(l, VialLabel::Corner).front(); }
std::size_t edge(const Layout& l) { return reference_vials(l, VialLabel::Edge).front(); }

Scene collinear_scene(int n) {
    Scene s;
    s.layout = build_rectangular_layout(n, 1, 0.01, 0.005);
    return s;
}

void analytical_vf(Context&, std::vector<CheckRow>& rows) {
    const ViewFactorMatrix two = analytical_view_factors(collinear_scene(2));
    const ViewFactorMatrix three = analytical_view_factors(collinear_scene(3));
    rows.push_back(within("two-vial F(vial, wall)", "", 0.8893, 5e-5, two(0, two.wall_index())));
    rows.push_back(within("three-vial middle F(vial, wall)", "", 0.7786, 5e-5, three(1, three.wall_index())));
}

void monte_carlo_vf(Context& ctx, std::vector<CheckRow>& rows) {
    for (int n : {2, 3}) {
        Scenario s = ctx.base(DryingMode::CFD, 1);
        s.scene = collinear_scene(n);
        const std::size_t v = n == 2 ? 0 : 1;
        const ViewFactorMatrix exact = analytical_view_factors(s.scene);
        const auto mc = ctx.view_factors(s);
        const double fa = exact(v, exact.wall_index());
        const double fm = (*mc)(v, mc->wall_index());
        rows.push_back(between(n == 2 ? "two-vial relative error" : "three-vial middle relative error",
                               "%", 0.0, 0.0, 0.5, 100.0 * std::abs(fm - fa) / fa));
    }
}

void baselines(Context& ctx, std::vector<CheckRow>& rows) {
    const std::pair<DryingMode, double> cases[] = {
        {DryingMode::CFD, 17.7}, {DryingMode::MFD, 4.0}, {DryingMode::HFD, 3.2}};
    for (const auto& [mode, expected] : cases) {
        Scenario s = ctx.base(mode, 1);
        s.approach = Approach::None;
        rows.push_back(within(std::string(to_string(mode)) + " drying time, no radiation", "h",
                              expected, 0.1, simulate_vial(s, 0).t_dry / kHour));
    }
}

void network_cfd(Context& ctx, std::vector<CheckRow>& rows) {
    const Layout l = ctx.base(DryingMode::CFD, 10).scene.layout;
    const SimulationResult& r = ctx.cfd10_network();
    rows.push_back(within("corner drying time", "h", 9.6, 0.2, r.vials[corner(l)].t_dry / kHour));
    rows.push_back(within("edge drying time", "h", 11.5, 0.3, r.vials[edge(l)].t_dry / kHour));
}

void simplified_vs_network(Context& ctx, std::vector<CheckRow>& rows) {
    const Layout l = ctx.base(DryingMode::CFD, 10).scene.layout;
    const SimulationResult& net = ctx.cfd10_network();
    const SimulationResult& simp = ctx.cfd10_simplified();
    double lo = 1e300, hi = -1e300;
    for (std::size_t v = 0; v < l.size(); ++v) {
        if (net.vials[v].label == VialLabel::Inner) continue;
        const double pct = 100.0 * (net.vials[v].t_dry - simp.vials[v].t_dry) / net.vials[v].t_dry;
        lo = std::min(lo, pct);
        hi = std::max(hi, pct);
    }
    rows.push_back(between("smallest outermost-vial underestimate", "%", 6.0, 4.0, 8.0, lo));
    rows.push_back(between("largest outermost-vial underestimate", "%", 6.0, 4.0, 8.0, hi));
    for (const auto& [name, v] : {std::pair<const char*, std::size_t>{"corner", corner(l)},
                                  {"edge", edge(l)}}) {
        rows.push_back(within(std::string(name) + " underestimate", "h", 0.7, 0.2,
                              (net.vials[v].t_dry - simp.vials[v].t_dry) / kHour));
    }
}

Scenario case5(Context& ctx, double T2) {
    Scenario s = ctx.base(DryingMode::CFD, 1);
    s.material.rho_d = 252.0;
    s.process.h = 18.1;
    s.process.T0 = s.process.Tb0 = 230.75;
    s.process.Tb_max = 268.15;
    s.process.Tm = 242.70;
    s.process.ramp = 0.208 / 60.0;
    s.vial = VialGeometry::from_dimensions(0.01425, 0.008, 3.58e-4, 1.28e-6);
    s.scene.layout = build_rectangular_layout(10, 10, s.vial.d, 0.0, s.scene.chamber.side);
    s.scene.chamber.T2 = T2;
    s.approach = Approach::Simplified;
    return s;
}

void case5_check(Context& ctx, std::vector<CheckRow>& rows) {
    Scenario none = case5(ctx, 293.15);
    none.approach = Approach::None;
    rows.push_back(within("no radiation", "h", 11.1, 0.2, simulate_vial(none, 0).t_dry / kHour));
    for (const auto& [T2, expected] : {std::pair{293.15, 7.4}, std::pair{288.80, 7.7}}) {
        Scenario s = case5(ctx, T2);
        s.view_factors = ctx.view_factors(s);
        const std::size_t v = corner(s.scene.layout);
        rows.push_back(within("simplified radiation, corner vial, T2 = " +
                                  std::to_string(T2).substr(0, 6) + " K",
                              "h", expected, 0.2, simulate_vial(s, v).t_dry / kHour));
    }
}

Scenario case6(Context& ctx, double h) {
    Scenario s = ctx.base(DryingMode::CFD, 1);
    s.process.h = h;
    s.process.T0 = s.process.Tb0 = 260.0;
    s.process.Tb_max = 310.0;
    s.process.Tm = 263.15;
    s.vial = VialGeometry::from_dimensions(0.014, 0.016, 7.04e-4, 2.46e-6);
    s.scene.layout = build_rectangular_layout(10, 10, s.vial.d, 0.0, s.scene.chamber.side);
    return s;
}

void case6_check(Context& ctx, std::vector<CheckRow>& rows) {
    // The packed center vial sees no wall, so h is fitted on it without radiation.
    FitProblem fit;
    fit.scenario = case6(ctx, 24.8);
    fit.scenario.approach = Approach::None;
    const std::size_t center = reference_vials(fit.scenario.scene.layout, VialLabel::Inner).front();
    fit.parameter = "process.h";
    fit.lower = 5.0;
    fit.upper = 100.0;
    fit.targets = {{Observable::DryingTime, center, 9.74 * kHour}};
    const double h = fit_scalar(fit).value;

    const Scenario s = case6(ctx, h);
    const SimulationResult r = ctx.run(s);
    char label[64];
    std::snprintf(label, sizeof label, " (fitted h = %.2f W/m2K)", h);
    rows.push_back(within(std::string("edge drying time") + label, "h", 8.47, 0.15,
                          r.vials[edge(s.scene.layout)].t_dry / kHour));
    rows.push_back(within(std::string("corner drying time") + label, "h", 7.61, 0.15,
                          r.vials[corner(s.scene.layout)].t_dry / kHour));
}

void layout_study(Context& ctx, std::vector<CheckRow>& rows) {
    struct Row {
        int n;
        double corner;
        double edge;   // 0: no edge vials
    };
    const Row table[] = {{1, 2.34, 0}, {2, 2.48, 0}, {5, 2.54, 2.68},
                         {8, 2.56, 2.73}, {10, 2.56, 2.74}, {15, 2.59, 2.76}};
    for (const Row& t : table) {
        const Scenario s = ctx.base(DryingMode::HFD, t.n);
        const SimulationResult& r =
            t.n == 10 ? ctx.hfd10_network() : ctx.cached("hfd_layout_" + std::to_string(t.n), s);
        const std::string tag = std::to_string(t.n) + "x" + std::to_string(t.n);
        rows.push_back(within(tag + " corner", "h", t.corner, 0.05,
                              r.vials[corner(s.scene.layout)].t_dry / kHour));
        if (t.edge > 0) {
            rows.push_back(within(tag + " edge", "h", t.edge, 0.05,
                                  r.vials[edge(s.scene.layout)].t_dry / kHour));
        }
    }
}

void radiative_energy(Context& ctx, std::vector<CheckRow>& rows) {
    const Layout l = ctx.base(DryingMode::CFD, 10).scene.layout;
    const SimulationResult& cfd = ctx.cfd10_network();
    const SimulationResult& hfd = ctx.hfd10_network();
    const auto e = &VialOutcome::absorbed_energy;
    rows.push_back(relative("CFD corner", "J", 3975.0, 0.10, mean_of(cfd, {corner(l)}, e)));
    rows.push_back(relative("CFD edge", "J", 3014.0, 0.10, mean_of(cfd, {edge(l)}, e)));
    rows.push_back(relative("CFD center (central 2x2 mean)", "J", 184.0, 0.10,
                            mean_of(cfd, reference_vials(l, VialLabel::Inner), e)));
    rows.push_back(relative("HFD corner", "J", 1073.0, 0.10, mean_of(hfd, {corner(l)}, e)));
}

void wall_temperature(Context& ctx, std::vector<CheckRow>& rows) {
    const double sweep[] = {256.15, 263.15, 273.15, 283.15, 293.15};
    std::vector<SimulationResult> results;
    for (double T2 : sweep) {
        Scenario s = ctx.base(DryingMode::HFD, 10);
        s.scene.chamber.T2 = T2;
        results.push_back(T2 == 293.15 ? ctx.hfd10_network() : ctx.run(s));
    }
    const Layout l = ctx.base(DryingMode::HFD, 10).scene.layout;
    const auto reduction = [&](std::size_t v) {
        return (results.front().vials[v].t_dry - results.back().vials[v].t_dry) / kHour;
    };
    rows.push_back(within("corner reduction, T2 = Tm to 293.15 K", "h", 0.61, 0.05, reduction(corner(l))));
    rows.push_back(within("edge reduction, T2 = Tm to 293.15 K", "h", 0.43, 0.05, reduction(edge(l))));
    int violations = 0;
    for (std::size_t k = 1; k < results.size(); ++k) {
        for (std::size_t v = 0; v < l.size(); ++v) {
            if (!(results[k].vials[v].t_dry < results[k - 1].vials[v].t_dry)) ++violations;
        }
    }
    rows.push_back(between("vials not strictly faster at the next hotter wall", "count", 0, 0, 0, violations));
    Scenario none = ctx.base(DryingMode::HFD, 1);
    none.approach = Approach::None;
    rows.push_back(within("no-radiation inner reference", "h", 3.17, 0.05, simulate_vial(none, 0).t_dry / kHour));
}

void tray(Context& ctx, std::vector<CheckRow>& rows) {
    Scenario s = ctx.base(DryingMode::HFD, 10);
    s.scene = add_occluder(s.scene, tray_frame(s.scene.layout, s.scene.layout.c, s.vial.L, 0.3,
                                               s.scene.chamber.T2));
    const SimulationResult r = ctx.run(s);
    rows.push_back(within("corner with tray", "h", 2.80, 0.05, r.vials[corner(s.scene.layout)].t_dry / kHour));
    rows.push_back(within("edge with tray", "h", 2.92, 0.05, r.vials[edge(s.scene.layout)].t_dry / kHour));
}

void hybrid(Context& ctx, std::vector<CheckRow>& rows) {
    Scenario s = ctx.base(DryingMode::CFD, 10);
    const SimulationResult& truth = ctx.cfd10_network();
    std::vector<double> t;
    for (const VialOutcome& o : truth.vials) t.push_back(o.t_dry);
    const HybridTraining trained = train_hybrid(s, t, "network approach, T2 = 293.15 K");
    for (double T2 : {263.15, 273.15, 283.15, 288.15}) {
        Scenario net = s;
        net.scene.chamber.T2 = T2;
        const SimulationResult ref = ctx.run(net);
        Scenario hyb = net;
        hyb.approach = Approach::Hybrid;
        hyb.hybrid = trained.map;
        const SimulationResult pred = simulate(hyb);
        double worst = 0.0;
        for (std::size_t v = 0; v < ref.vials.size(); ++v) {
            worst = std::max(worst, std::abs(pred.vials[v].t_dry - ref.vials[v].t_dry) / kHour);
        }
        rows.push_back(between("worst vial error at T2 = " + std::to_string(T2).substr(0, 6) + " K",
                               "h", 0.0, 0.0, 0.01, worst));
    }
}

// Averages a vial-only matrix over the symmetry group of a square array.
ViewFactorMatrix symmetrize_square(const ViewFactorMatrix& vf, int n) {
    const std::size_t k = vf.size();
    const auto map = [n](int g, std::size_t v) {
        int r = static_cast<int>(v) / n, c = static_cast<int>(v) % n;
        if (g & 1) c = n - 1 - c;
        if (g & 2) r = n - 1 - r;
        if (g & 4) std::swap(r, c);
        return static_cast<std::size_t>(r * n + c);
    };
    ViewFactorMatrix out(vf.surfaces());
    const std::size_t nv = static_cast<std::size_t>(n * n);
    for (int g = 0; g < 8; ++g) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const std::size_t pi = i < nv ? map(g, i) : i;
                const std::size_t pj = j < nv ? map(g, j) : j;
                out(i, j) += vf(pi, pj) / 8.0;
            }
        }
    }
    return out;
}

void properties(Context& ctx, std::vector<CheckRow>& rows) {
    {
        const auto vf = ctx.view_factors(ctx.base(DryingMode::CFD, 10));
        rows.push_back(between("view-factor summation error (10x10)", "", 0, 0, 1e-9, vf->max_summation_error()));
        rows.push_back(between("view-factor reciprocity error (10x10)", "", 0, 0, 1e-9, vf->max_reciprocity_error()));

        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> temp(230.0, 300.0);
        SurfaceSet set;
        set.view_factors = vf.get();
        for (std::size_t i = 0; i < vf->size(); ++i) {
            set.temperature.push_back(temp(rng));
            set.emissivity.push_back(i == vf->wall_index() ? 0.3 : 0.8);
        }
        const RadiosityResult res = solve_radiosity_network(set);
        double sum = 0.0, mag = 0.0;
        for (double q : res.Q) {
            sum += q;
            mag += std::abs(q);
        }
        rows.push_back(between("radiosity conservation |sum Q| / sum |Q|", "", 0, 0, 1e-9, std::abs(sum) / mag));

        std::fill(set.temperature.begin(), set.temperature.end(), 270.0);
        const RadiosityResult eq = solve_radiosity_network(set);
        double worst = 0.0;
        for (std::size_t i = 0; i < eq.Q.size(); ++i) {
            worst = std::max(worst, std::abs(eq.Q[i]) / (kStefanBoltzmann * std::pow(270.0, 4) * vf->area(i)));
        }
        rows.push_back(between("equal temperatures, max |Q| / (sigma T^4 A)", "", 0, 0, 1e-9, worst));
    }
    {
        Scene one;
        one.layout = build_rectangular_layout(1, 1, 0.01, 0.005);
        const ViewFactorMatrix vf = analytical_view_factors(one);
        SurfaceSet set{&vf, {256.15, 293.15}, {0.8, 0.3}, {}};
        const double q = solve_radiosity_network(set).Q[0];
        const double closed = two_surface_qrad(256.15, 293.15, 0.8, one.vial_area, 1.0, 0.3, one.chamber.A2);
        rows.push_back(between("two-surface roster vs closed form, relative", "", 0, 0, 1e-10,
                               std::abs(q - closed) / std::abs(closed)));
    }
    {
        const int n = 5;
        Scenario s = ctx.base(DryingMode::HFD, n);
        s.view_factors = std::make_shared<const ViewFactorMatrix>(symmetrize_square(*ctx.view_factors(s), n));
        const SimulationResult r = simulate(s);
        double worst = 0.0;
        for (std::size_t v = 0; v < r.vials.size(); ++v) {
            const int row = static_cast<int>(v) / n, col = static_cast<int>(v) % n;
            const std::size_t images[] = {static_cast<std::size_t>(row * n + (n - 1 - col)),
                                          static_cast<std::size_t>((n - 1 - row) * n + col),
                                          static_cast<std::size_t>(col * n + row)};
            for (std::size_t w : images) {
                worst = std::max(worst, std::abs(r.vials[v].t_dry - r.vials[w].t_dry) / kHour);
            }
        }
        rows.push_back(between("layout symmetry of the drying-time map (5x5, symmetrized F)", "h", 0, 0, 1e-6, worst));
    }
    {
        const SimulationResult& net = ctx.cfd10_network();
        const SimulationResult& simp = ctx.cfd10_simplified();
        int outer = 0, all = 0;
        for (std::size_t v = 0; v < net.vials.size(); ++v) {
            if (simp.vials[v].t_dry > net.vials[v].t_dry) {
                ++all;
                if (net.vials[v].label != VialLabel::Inner) ++outer;
            }
        }
        rows.push_back(between("outermost vials with simplified > network", "count", 0, 0, 0, outer));
        rows.push_back(between("all vials with simplified > network", "count", 0, 0, 0, all));
    }
    {
        const Scene two = collinear_scene(2);
        const double exact = analytical_view_factors(two)(0, 2);
        const int seeds = 30;
        const std::int64_t n_rays = 10000;
        double sum = 0.0;
        for (int k = 0; k < seeds; ++k) {
            const ViewFactorMatrix raw = monte_carlo_view_factors(two, {n_rays, 1000u + static_cast<std::uint64_t>(k)});
            sum += raw(0, raw.wall_index());
        }
        const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(n_rays)) / std::sqrt(seeds);
        rows.push_back(between("Monte Carlo bias over 30 seeds", "std errors", 0, 0, 3.0,
                               std::abs(sum / seeds - exact) / se));
    }
    {
        double t[3];
        const std::pair<int, double> grids[] = {{26, 4.0}, {51, 2.0}, {101, 1.0}};
        for (int g = 0; g < 3; ++g) {
            Scenario s = ctx.base(DryingMode::CFD, 1);
            s.vf_source = ViewFactorSource::Analytical;
            s.approach = Approach::Simplified;
            s.numerics.nodes = grids[g].first;
            s.numerics.dt = grids[g].second;
            t[g] = simulate_vial(s, 0).t_dry;
        }
        rows.push_back(between("grid refinement: |t(101,1s)-t(51,2s)| / |t(51,2s)-t(26,4s)|", "", 0, 0, 1.0,
                               std::abs(t[2] - t[1]) / std::abs(t[1] - t[0])));
    }
}

using Runner = void (*)(Context&, std::vector<CheckRow>&);

struct Entry {
    int id;
    const char* name;
    Runner run;
};

const Entry kCriteria[] = {
    {1, "analytical_view_factors", analytical_vf},
    {2, "monte_carlo_view_factors", monte_carlo_vf},
    {3, "no_radiation_baselines", baselines},
    {4, "network_10x10_cfd", network_cfd},
    {5, "simplified_vs_network", simplified_vs_network},
    {6, "case5_simplified", case5_check},
    {7, "case6_network", case6_check},
    {8, "layout_study", layout_study},
    {9, "radiative_energy", radiative_energy},
    {10, "wall_temperature", wall_temperature},
    {11, "tray_occluder", tray},
    {12, "hybrid_training", hybrid},
    {13, "property_suite", properties},
};

bool selected(const Entry& e, const std::string& filter) {
    if (filter.empty()) return true;
    if (std::all_of(filter.begin(), filter.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        return filter == std::to_string(e.id);
    }
    return std::string(e.name).find(filter) != std::string::npos;
}

}  // namespace

bool CriterionReport::pass() const {
    if (!error.empty() || checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckRow& r) { return r.pass; });
}

std::vector<CriterionInfo> validation_criteria() {
    std::vector<CriterionInfo> out;
    for (const Entry& e : kCriteria) out.push_back({e.id, e.name});
    return out;
}

std::vector<CriterionReport> run_validation_suite(const ValidationOptions& options) {
    Context ctx(options);
    std::vector<CriterionReport> out;
    for (const Entry& e : kCriteria) {
        if (!selected(e, options.filter)) continue;
        CriterionReport report;
        report.id = e.id;
        report.name = e.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            e.run(ctx, report.checks);
        } catch (const std::exception& ex) {
            report.error = ex.what();
        }
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.on_report) options.on_report(report);
        out.push_back(std::move(report));
    }
    return out;
}

}  // namespace lyorad
