#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lyorad/error.h"
#include "lyorad/results.h"

using namespace lyorad;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Scenario array10() {
    Scenario s;
    s.process.mode = DryingMode::HFD;
    s.scene.layout = build_rectangular_layout(10, 10, s.vial.d, 0.005);
    s.approach = Approach::Simplified;
    s.mc.n_rays = 20000;
    return s;
}

}  // namespace

TEST_CASE("summary has one row per vial and is reproducible") {
    const Scenario s = array10();
    const fs::path dir = fs::temp_directory_path() / "lyorad_results_test";
    fs::remove_all(dir);
    const ResultBundle a = export_results(simulate(s), s, (dir / "a").string());
    const ResultBundle b = export_results(simulate(s), s, (dir / "b").string());
    const std::string text = slurp(a.summary_path);
    CHECK(text.rfind("vial_id,row,col,x_m,y_m,label,t_m_hours,t_dry_hours,radiative_energy_J\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 101);
    CHECK(text == slurp(b.summary_path));
    CHECK(a.series_path.empty());
    CHECK_FALSE(fs::exists(dir / "a" / "series.csv"));

    const auto meta = nlohmann::json::parse(slurp(a.metadata_path));
    CHECK(meta["version"] == library_version());
    CHECK(meta["seed"] == s.mc.seed);
    CHECK(meta["config_hash"].get<std::string>().size() == 16);
    CHECK(meta["vials"] == 100);
    fs::remove_all(dir);
}

TEST_CASE("series file when requested") {
    Scenario s;
    s.scene.layout = build_rectangular_layout(1, 1, s.vial.d, 0.005);
    s.process.mode = DryingMode::HFD;
    s.series_interval = 300.0;
    const SimulationResult r = simulate(s);
    std::stringstream ss;
    write_series_csv(ss, r);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "vial_id,t_s,T_top_K,T_bottom_K,s_m,q_rad_W,absorbed_J");
    CHECK(r.series[0].size() > 30);
}

TEST_CASE("unwritable output directory") {
    Scenario s;
    s.scene.layout = build_rectangular_layout(1, 1, s.vial.d, 0.005);
    const SimulationResult r = simulate(s);
    try {
        export_results(r, s, "/proc/lyorad_cannot_write_here");
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IoError);
    }
}
