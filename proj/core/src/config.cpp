#include "lyorad/config.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lyorad/error.h"
#include "lyorad/estimation.h"
#include "lyorad/units.h"

namespace lyorad {

namespace {

using nlohmann::json;

// Object reader that remembers which keys were consumed so leftovers can be rejected.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("expected an object");
    }

    const std::string& path() const { return path_; }
    bool has(const std::string& key) const { return j_.contains(key); }

    [[noreturn]] void fail(const std::string& what, const std::string& key = "") const {
        throw Error(ErrorKind::SchemaError, field(key) + ": " + what);
    }

    double quantity(const std::string& key, Quantity q, double fallback) {
        if (!take(key)) return fallback;
        return to_quantity(j_.at(key), q, field(key));
    }

    double number(const std::string& key, double fallback) {
        return quantity(key, Quantity::Dimensionless, fallback);
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) fail("expected an integer", key);
        return v.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_unsigned()) fail("expected a non-negative integer", key);
        return v.get<std::uint64_t>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean()) fail("expected true or false", key);
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!take(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) fail("expected a string", key);
        return v.get<std::string>();
    }

    const json* raw(const std::string& key) {
        if (!take(key)) return nullptr;
        return &j_.at(key);
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!used_.count(key)) fail("unknown key", key);
        }
    }

    std::string field(const std::string& key) const {
        if (key.empty()) return path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    static double to_quantity(const json& v, Quantity q, const std::string& where) {
        if (v.is_number()) return v.get<double>();
        if (!v.is_string()) {
            throw Error(ErrorKind::SchemaError, where + ": expected a number or a quantity string");
        }
        try {
            return parse_quantity(v.get<std::string>(), q);
        } catch (const Error& e) {
            throw Error(e.kind(), where + ": " + e.detail());
        }
    }

private:
    bool take(const std::string& key) {
        if (!j_.contains(key)) return false;
        used_.insert(key);
        return true;
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

template <typename Enum>
Enum pick(const Section& sec, const std::string& key, const std::string& value,
          std::initializer_list<std::pair<const char*, Enum>> choices) {
    std::string allowed;
    for (const auto& [name, e] : choices) {
        if (value == name) return e;
        allowed += allowed.empty() ? name : std::string(", ") + name;
    }
    sec.fail("'" + value + "' is not one of " + allowed, key);
}

template <typename Fn>
void checked(const std::string& where, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument) throw Error(ErrorKind::SchemaError, where + ": " + e.detail());
        throw;
    }
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.is_relative()) p = fs::path(base_dir) / p;
    return fs::absolute(p).lexically_normal().string();
}

Vec2 parse_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) {
        throw Error(ErrorKind::SchemaError, where + ": expected a point [x, y]");
    }
    return {Section::to_quantity(v[0], Quantity::Length, where),
            Section::to_quantity(v[1], Quantity::Length, where)};
}

std::vector<Vec2> parse_points(const json& v, const std::string& where) {
    if (!v.is_array()) throw Error(ErrorKind::SchemaError, where + ": expected a list of points");
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(parse_point(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

MaterialProperties parse_material(Section s) {
    MaterialProperties m;
    m.rho = s.quantity("rho", Quantity::Density, m.rho);
    m.rho_d = s.quantity("rho_d", Quantity::Density, m.rho_d);
    m.k = s.quantity("k", Quantity::Conductivity, m.k);
    m.cp = s.quantity("cp", Quantity::SpecificHeat, m.cp);
    m.dh_sub = s.quantity("dh_sub", Quantity::SpecificEnthalpy, m.dh_sub);
    m.eps_vial = s.number("eps_vial", m.eps_vial);
    s.finish();
    checked(s.path(), [&] { m.validate(); });
    return m;
}

ProcessSettings parse_process(Section s) {
    ProcessSettings p;
    p.mode = pick<DryingMode>(s, "mode", s.text("mode", "CFD"),
                  {{"CFD", DryingMode::CFD}, {"MFD", DryingMode::MFD}, {"HFD", DryingMode::HFD}});
    p.h = s.quantity("h", Quantity::HeatTransferCoefficient, p.h);
    p.T0 = s.quantity("T0", Quantity::Temperature, p.T0);
    p.Tb0 = s.quantity("Tb0", Quantity::Temperature, p.Tb0);
    p.Tb_max = s.quantity("Tb_max", Quantity::Temperature, p.Tb_max);
    p.ramp = s.quantity("ramp", Quantity::TemperatureRate, p.ramp);
    p.Tm = s.quantity("Tm", Quantity::Temperature, p.Tm);
    p.Q = s.quantity("Q", Quantity::Power, p.Q);
    p.p1 = s.number("p1", p.p1);
    p.p2 = s.number("p2", p.p2);
    p.p3 = s.number("p3", p.p3);
    s.finish();
    checked(s.path(), [&] { p.validate(); });
    return p;
}

VialGeometry parse_vial(Section s) {
    const VialGeometry def;
    const double d = s.quantity("d", Quantity::Length, def.d);
    const double L = s.quantity("L", Quantity::Length, def.L);
    std::optional<double> area;
    std::optional<double> volume;
    if (s.has("A1")) area = s.quantity("A1", Quantity::Area, 0.0);
    if (s.has("V")) volume = s.quantity("V", Quantity::Volume, 0.0);
    // Without overrides the reference vial keeps its tabulated area and volume.
    if (!s.has("d") && !s.has("L")) {
        area = area.value_or(def.A1);
        volume = volume.value_or(def.V);
    }
    s.finish();
    VialGeometry g = VialGeometry::from_dimensions(d, L, area, volume);
    checked(s.path(), [&] { g.validate(); });
    return g;
}

Chamber parse_chamber(Section s) {
    Chamber c;
    c.side = s.quantity("side", Quantity::Length, c.side);
    c.A2 = s.quantity("A2", Quantity::Area, c.A2);
    c.eps_wall = s.number("eps_wall", c.eps_wall);
    c.T2 = s.quantity("T2", Quantity::Temperature, c.T2);
    s.finish();
    if (!(c.side > 0) || !(c.A2 > 0)) s.fail("side and A2 must be positive");
    if (!(c.eps_wall > 0) || !(c.eps_wall < 1)) s.fail("eps_wall must lie in (0, 1)");
    if (!(c.T2 > 0)) s.fail("T2 must be positive");
    return c;
}

Layout parse_layout(Section s, double d, double side) {
    const std::string arrangement = s.text("arrangement", "rectangular");
    const Arrangement a = pick<Arrangement>(s, "arrangement", arrangement,
                               {{"rectangular", Arrangement::Rectangular},
                                {"hexagonal", Arrangement::Hexagonal},
                                {"custom", Arrangement::Custom}});
    const double c = s.quantity("c", Quantity::Length, 0.005);
    Layout layout;
    if (a == Arrangement::Rectangular) {
        const auto nx = s.integer("nx", 1);
        const auto ny = s.integer("ny", nx);
        if (nx < 1 || ny < 1) s.fail("nx and ny must be >= 1");
        layout = build_rectangular_layout(static_cast<int>(nx), static_cast<int>(ny), d, c, side);
    } else if (a == Arrangement::Hexagonal) {
        const auto rows = s.integer("rows", 1);
        const auto cols = s.integer("cols", rows);
        if (rows < 1 || cols < 1) s.fail("rows and cols must be >= 1");
        layout = build_hexagonal_layout(static_cast<int>(rows), static_cast<int>(cols), d, c, side);
    } else {
        const json* centers = s.raw("centers");
        if (centers == nullptr) s.fail("custom layouts need centers", "centers");
        layout = build_custom_layout(parse_points(*centers, s.field("centers")), d, side);
    }
    s.finish();
    return layout;
}

Occluder parse_occluder(Section s, const Layout& layout, const VialGeometry& vial,
                        const Chamber& chamber) {
    const std::string kind = s.text("kind", "polyline");
    pick<int>(s, "kind", kind, {{"polyline", 0}, {"tray", 1}});
    const double height = s.quantity("height", Quantity::Length, vial.L);
    const double eps = s.number("emissivity", 0.3);
    const double temperature = s.quantity("temperature", Quantity::Temperature, chamber.T2);
    Occluder occ;
    if (kind == "tray") {
        const double gap = s.quantity("gap", Quantity::Length, layout.c);
        occ = tray_frame(layout, gap, height, eps, temperature);
    } else {
        const json* pts = s.raw("points");
        if (pts == nullptr) s.fail("polyline occluders need points", "points");
        occ.points = parse_points(*pts, s.field("points"));
        occ.closed = s.boolean("closed", false);
        occ.height = height;
        occ.emissivity = eps;
        occ.temperature = temperature;
        if (occ.points.size() < 2) s.fail("need at least two points", "points");
    }
    occ.name = s.text("name", occ.name);
    occ.thermal = pick<OccluderThermal>(s, "thermal", s.text("thermal", "fixed"),
                       {{"fixed", OccluderThermal::Fixed}, {"adiabatic", OccluderThermal::Adiabatic}});
    s.finish();
    if (!(occ.emissivity > 0) || !(occ.emissivity < 1)) s.fail("emissivity must lie in (0, 1)");
    if (!(occ.height > 0)) s.fail("height must be positive");
    return occ;
}

HybridMap parse_inline_hybrid(Section s) {
    HybridMap map;
    const json* r = s.raw("r_rad");
    if (r == nullptr || !r->is_array()) s.fail("expected a list of resistances", "r_rad");
    for (const json& v : *r) map.r_rad.push_back(Section::to_quantity(v, Quantity::Dimensionless, s.field("r_rad")));
    for (const char* key : {"row", "col"}) {
        const json* v = s.raw(key);
        if (v == nullptr) continue;
        if (!v->is_array()) s.fail("expected a list of integers", key);
        auto& dst = std::string(key) == "row" ? map.row : map.col;
        for (const json& x : *v) {
            if (!x.is_number_integer()) s.fail("expected a list of integers", key);
            dst.push_back(x.get<int>());
        }
    }
    map.training_T2 = s.quantity("training_T2", Quantity::Temperature, 0.0);
    map.source = s.text("source", "");
    s.finish();
    return map;
}

void parse_radiation(Section s, Scenario& sc, const std::string& base_dir) {
    sc.approach = pick<Approach>(s, "approach", s.text("approach", "network"),
                       {{"none", Approach::None},
                        {"simplified", Approach::Simplified},
                        {"hybrid", Approach::Hybrid},
                        {"network", Approach::Network}});
    sc.vf_source = pick<ViewFactorSource>(s, "view_factors", s.text("view_factors", "monte_carlo"),
                        {{"analytical", ViewFactorSource::Analytical},
                         {"monte_carlo", ViewFactorSource::MonteCarlo},
                         {"file", ViewFactorSource::File}});
    sc.mc.n_rays = s.integer("n_rays", sc.mc.n_rays);
    if (sc.mc.n_rays < 1) s.fail("must be >= 1", "n_rays");
    sc.mc.seed = s.unsigned_integer("seed", sc.mc.seed);
    const std::string file = s.text("file", "");
    if (!file.empty()) sc.vf_file = resolve_path(file, base_dir);
    if (sc.vf_source == ViewFactorSource::File && sc.vf_file.empty()) {
        s.fail("view_factors = file needs a file", "file");
    }
    sc.hold_done_at_tm = s.boolean("hold_done_at_tm", false);
    const std::string map_path = s.text("hybrid_map", "");
    const json* inline_map = s.raw("hybrid");
    if (!map_path.empty() && inline_map != nullptr) s.fail("give either hybrid_map or hybrid", "hybrid");
    if (!map_path.empty()) sc.hybrid = read_hybrid_map(resolve_path(map_path, base_dir));
    if (inline_map != nullptr) sc.hybrid = parse_inline_hybrid(Section(*inline_map, s.field("hybrid")));
    s.finish();
    if (sc.approach == Approach::Hybrid) {
        if (!sc.hybrid) s.fail("the hybrid approach needs hybrid_map or hybrid", "approach");
        if (sc.hybrid->r_rad.size() != sc.scene.layout.size()) {
            s.fail("hybrid map has " + std::to_string(sc.hybrid->r_rad.size()) +
                   " resistances for " + std::to_string(sc.scene.layout.size()) + " vials");
        }
        for (double r : sc.hybrid->r_rad) {
            if (!(r > 0) || r > kHybridResistanceCap) s.fail("resistances must lie in (0, 1e7]");
        }
    }
}

NumericsConfig parse_numerics(Section s) {
    NumericsConfig n;
    n.nodes = static_cast<int>(s.integer("nodes", n.nodes));
    n.dt = s.quantity("dt", Quantity::Time, n.dt);
    n.tol_event = s.number("tol_event", n.tol_event);
    n.max_time = s.quantity("max_time", Quantity::Time, n.max_time);
    s.finish();
    checked(s.path(), [&] { n.validate(); });
    return n;
}

const json kEmpty = json::object();

json points_json(const std::vector<Vec2>& pts) {
    json out = json::array();
    for (const Vec2& p : pts) out.push_back({p.x, p.y});
    return out;
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::SchemaError, std::string("config is not valid JSON: ") + e.what());
    }
    Section top(doc, "");
    ScenarioConfig cfg;
    cfg.name = top.text("name", "");
    top.text("description", "");
    Scenario& sc = cfg.scenario;

    const auto section = [&](const char* key) {
        const json* j = top.raw(key);
        return Section(j ? *j : kEmpty, key);
    };
    sc.material = parse_material(section("material"));
    sc.process = parse_process(section("process"));
    sc.vial = parse_vial(section("vial"));
    sc.scene.chamber = parse_chamber(section("chamber"));
    sc.scene.vial_area = sc.vial.A1;
    sc.scene.layout = parse_layout(section("layout"), sc.vial.d, sc.scene.chamber.side);

    if (const json* occ = top.raw("occluders")) {
        if (!occ->is_array()) top.fail("expected a list", "occluders");
        for (std::size_t i = 0; i < occ->size(); ++i) {
            Section s((*occ)[i], "occluders[" + std::to_string(i) + "]");
            sc.scene = add_occluder(sc.scene, parse_occluder(std::move(s), sc.scene.layout, sc.vial,
                                                             sc.scene.chamber));
        }
    }

    sc.numerics = parse_numerics(section("numerics"));
    if (const json* rad = top.raw("radiation")) {
        parse_radiation(Section(*rad, "radiation"), sc, base_dir);
    } else {
        sc.approach = Approach::None;
    }
    {
        Section out = section("output");
        cfg.output_dir = out.text("dir", "");
        if (!cfg.output_dir.empty()) cfg.output_dir = resolve_path(cfg.output_dir, base_dir);
        sc.series_interval = out.quantity("series_interval", Quantity::Time, 0.0);
        if (sc.series_interval < 0) out.fail("must be >= 0", "series_interval");
        out.finish();
    }
    top.finish();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::FileError, "cannot open config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::filesystem::path p(path);
    const std::string base = p.has_parent_path() ? p.parent_path().string() : ".";
    try {
        return parse_config_text(buf.str(), base);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.detail());
    }
}

Scenario parse_scenario(const std::string& path) { return load_config(path).scenario; }

std::string serialize_config(const ScenarioConfig& config) {
    const Scenario& sc = config.scenario;
    json doc;
    if (!config.name.empty()) doc["name"] = config.name;
    const MaterialProperties& m = sc.material;
    doc["material"] = {{"rho", m.rho}, {"rho_d", m.rho_d}, {"k", m.k},
                       {"cp", m.cp},   {"dh_sub", m.dh_sub}, {"eps_vial", m.eps_vial}};
    const ProcessSettings& p = sc.process;
    doc["process"] = {{"mode", to_string(p.mode)}, {"h", p.h},   {"T0", p.T0}, {"Tb0", p.Tb0},
                      {"Tb_max", p.Tb_max},       {"ramp", p.ramp}, {"Tm", p.Tm}, {"Q", p.Q},
                      {"p1", p.p1},               {"p2", p.p2}, {"p3", p.p3}};
    doc["vial"] = {{"d", sc.vial.d}, {"L", sc.vial.L}, {"A1", sc.vial.A1}, {"V", sc.vial.V}};
    const Chamber& c = sc.scene.chamber;
    doc["chamber"] = {{"side", c.side}, {"A2", c.A2}, {"eps_wall", c.eps_wall}, {"T2", c.T2}};

    const Layout& l = sc.scene.layout;
    json layout;
    layout["arrangement"] = to_string(l.arrangement);
    switch (l.arrangement) {
        case Arrangement::Rectangular:
            layout["nx"] = l.cols;
            layout["ny"] = l.rows;
            layout["c"] = l.c;
            break;
        case Arrangement::Hexagonal:
            layout["rows"] = l.rows;
            layout["cols"] = l.cols;
            layout["c"] = l.c;
            break;
        case Arrangement::Custom: layout["centers"] = points_json(l.centers); break;
    }
    doc["layout"] = layout;

    if (!sc.scene.occluders.empty()) {
        json occs = json::array();
        for (const Occluder& o : sc.scene.occluders) {
            occs.push_back({{"kind", "polyline"},
                            {"name", o.name},
                            {"points", points_json(o.points)},
                            {"closed", o.closed},
                            {"height", o.height},
                            {"emissivity", o.emissivity},
                            {"thermal", o.thermal == OccluderThermal::Fixed ? "fixed" : "adiabatic"},
                            {"temperature", o.temperature}});
        }
        doc["occluders"] = occs;
    }

    if (sc.approach != Approach::None || sc.hybrid) {
        json rad = {{"approach", to_string(sc.approach)},
                    {"view_factors", to_string(sc.vf_source)},
                    {"n_rays", sc.mc.n_rays},
                    {"seed", sc.mc.seed},
                    {"hold_done_at_tm", sc.hold_done_at_tm}};
        if (!sc.vf_file.empty()) rad["file"] = sc.vf_file;
        if (sc.hybrid) {
            rad["hybrid"] = {{"r_rad", sc.hybrid->r_rad},
                             {"row", sc.hybrid->row},
                             {"col", sc.hybrid->col},
                             {"training_T2", sc.hybrid->training_T2},
                             {"source", sc.hybrid->source}};
        }
        doc["radiation"] = rad;
    }
    const NumericsConfig& n = sc.numerics;
    doc["numerics"] = {{"nodes", n.nodes}, {"dt", n.dt}, {"tol_event", n.tol_event},
                       {"max_time", n.max_time}};
    json out = {{"series_interval", sc.series_interval}};
    if (!config.output_dir.empty()) out["dir"] = config.output_dir;
    doc["output"] = out;
    return doc.dump(2) + "\n";
}

std::string serialize_scenario(const Scenario& scenario) {
    ScenarioConfig cfg;
    cfg.scenario = scenario;
    return serialize_config(cfg);
}

std::string content_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace lyorad
