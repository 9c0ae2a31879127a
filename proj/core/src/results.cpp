#include "lyorad/results.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "lyorad/config.h"
#include "lyorad/error.h"

namespace lyorad {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

const char* library_version() noexcept { return LYORAD_VERSION; }

void write_summary_csv(std::ostream& out, const SimulationResult& result, const Scenario& scenario) {
    const Layout& layout = scenario.scene.layout;
    if (result.vials.size() != layout.size()) {
        throw Error(ErrorKind::InvalidArgument, "result does not match the scenario layout");
    }
    out << "vial_id,row,col,x_m,y_m,label,t_m_hours,t_dry_hours,radiative_energy_J\n";
    for (std::size_t v = 0; v < result.vials.size(); ++v) {
        const VialOutcome& o = result.vials[v];
        out << v << ',' << layout.row[v] << ',' << layout.col[v] << ','
            << fmt("%.9g", layout.centers[v].x) << ',' << fmt("%.9g", layout.centers[v].y) << ','
            << to_string(o.label) << ',' << fmt("%.6f", o.t_m / 3600.0) << ','
            << fmt("%.6f", o.t_dry / 3600.0) << ',' << fmt("%.4f", o.absorbed_energy) << '\n';
    }
}

void write_series_csv(std::ostream& out, const SimulationResult& result) {
    out << "vial_id,t_s,T_top_K,T_bottom_K,s_m,q_rad_W,absorbed_J\n";
    for (std::size_t v = 0; v < result.series.size(); ++v) {
        for (const SeriesSample& s : result.series[v]) {
            out << v << ',' << fmt("%.6f", s.t) << ',' << fmt("%.6f", s.T_top) << ','
                << fmt("%.6f", s.T_bottom) << ',' << fmt("%.9g", s.s) << ','
                << fmt("%.9g", s.q_rad) << ',' << fmt("%.6f", s.absorbed) << '\n';
        }
    }
}

ResultBundle export_results(const SimulationResult& result, const Scenario& scenario,
                            const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw Error(ErrorKind::IoError, "cannot create output directory " + out_dir);
    }
    ResultBundle bundle;
    const auto open = [](const fs::path& p) {
        std::ofstream f(p);
        if (!f) throw Error(ErrorKind::IoError, "cannot write " + p.string());
        return f;
    };
    const auto close = [](std::ofstream& f, const fs::path& p) {
        f.close();
        if (!f) throw Error(ErrorKind::IoError, "failed writing " + p.string());
    };

    const fs::path summary = fs::path(out_dir) / "summary.csv";
    {
        std::ofstream f = open(summary);
        write_summary_csv(f, result, scenario);
        close(f, summary);
    }
    bundle.summary_path = summary.string();

    bool has_series = false;
    for (const auto& s : result.series) has_series |= !s.empty();
    if (has_series) {
        const fs::path series = fs::path(out_dir) / "series.csv";
        std::ofstream f = open(series);
        write_series_csv(f, result);
        close(f, series);
        bundle.series_path = series.string();
    }

    const std::string canonical = serialize_scenario(scenario);
    nlohmann::json meta;
    meta["version"] = library_version();
    meta["config_hash"] = content_hash(canonical);
    meta["seed"] = scenario.mc.seed;
    meta["n_rays"] = scenario.mc.n_rays;
    meta["wall_clock_seconds"] = result.wall_clock_seconds;
    meta["vials"] = result.vials.size();
    for (const auto& [key, value] : result.metadata) meta["run"][key] = value;
    meta["config"] = nlohmann::json::parse(canonical);
    const fs::path metadata = fs::path(out_dir) / "metadata.json";
    {
        std::ofstream f = open(metadata);
        f << meta.dump(2) << '\n';
        close(f, metadata);
    }
    bundle.metadata_path = metadata.string();
    return bundle;
}

}  // namespace lyorad
