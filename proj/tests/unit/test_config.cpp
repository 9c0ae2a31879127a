#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lyorad/config.h"
#include "lyorad/error.h"
#include "lyorad/units.h"

using namespace lyorad;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error for " << text);
    return ErrorKind::InvalidArgument;
}

std::string message_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("unit conversion") {
    CHECK(parse_quantity("0.5 cm", Quantity::Length) == doctest::Approx(0.005));
    CHECK(parse_quantity("2.3 mL", Quantity::Volume) == doctest::Approx(2.3e-6));
    CHECK(parse_quantity("1 K/min", Quantity::TemperatureRate) == doctest::Approx(1.0 / 60.0));
    CHECK(parse_quantity("-16.3 degC", Quantity::Temperature) == doctest::Approx(256.85));
    CHECK(parse_quantity("2840 kJ/kg", Quantity::SpecificEnthalpy) == doctest::Approx(2.84e6));
    CHECK(parse_quantity("9.74 h", Quantity::Time) == doctest::Approx(35064.0));
    CHECK(parse_quantity("65 W/(m^2 K)", Quantity::HeatTransferCoefficient) == doctest::Approx(65.0));
    CHECK(parse_quantity("12", Quantity::Length) == 12.0);
    CHECK_THROWS_AS(parse_quantity("3 furlongs", Quantity::Length), Error);
    CHECK_THROWS_AS(parse_quantity("3 K", Quantity::Length), Error);
    CHECK_THROWS_AS(parse_quantity("cm", Quantity::Length), Error);
}

TEST_CASE("defaults are the reference values") {
    const Scenario s = parse_config_text("{}").scenario;
    CHECK(s.material == MaterialProperties{});
    CHECK(s.process == ProcessSettings{});
    CHECK(s.vial == VialGeometry{});
    CHECK(s.scene.chamber == Chamber{});
    CHECK(s.approach == Approach::None);
    CHECK(s.scene.layout.size() == 1);
    CHECK(s.scene.layout.c == 0.005);
}

TEST_CASE("shipped CFD defaults convert to the reference values") {
    const Scenario s = parse_scenario(std::string(LYORAD_CONFIG_DIR) + "/defaults_cfd.json");
    CHECK(s.process.mode == DryingMode::CFD);
    CHECK(s.material.rho == 917.0);
    CHECK(s.material.rho_d == 63.0);
    CHECK(s.material.k == 2.30);
    CHECK(s.material.cp == 1967.8);
    CHECK(s.material.dh_sub == 2.84e6);
    CHECK(s.process.h == 65.0);
    CHECK(s.process.Tb_max == 281.85);
    CHECK(s.process.ramp == doctest::Approx(1.0 / 60.0));
    CHECK(s.vial.A1 == 1.3e-3);
    CHECK(s.vial.V == 3.3e-6);
    CHECK(s.scene.chamber.T2 == 293.15);
}

TEST_CASE("every shipped config round-trips") {
    int n = 0;
    for (const auto& entry : fs::directory_iterator(LYORAD_CONFIG_DIR)) {
        const std::string name = entry.path().filename().string();
        if (entry.path().extension() != ".json" || name.rfind("fit_", 0) == 0) continue;
        CAPTURE(name);
        const ScenarioConfig a = load_config(entry.path().string());
        const std::string text = serialize_config(a);
        const ScenarioConfig b = parse_config_text(text);
        CHECK(b.scenario == a.scenario);
        CHECK(b.name == a.name);
        CHECK(serialize_config(b) == text);
        ++n;
    }
    CHECK(n >= 10);
}

TEST_CASE("schema errors carry the field path") {
    CHECK(kind_of(R"({"material": {"rho_d": 1000}})") == ErrorKind::SchemaError);
    CHECK(kind_of(R"({"layout": {"nx": 2, "bogus": 1}})") == ErrorKind::SchemaError);
    CHECK(message_of(R"({"layout": {"nx": 2, "bogus": 1}})").find("layout.bogus") != std::string::npos);
    CHECK(kind_of(R"({"vial": {"d": "1 K"}})") == ErrorKind::UnitError);
    CHECK(message_of(R"({"vial": {"d": "1 K"}})").find("vial.d") != std::string::npos);
    CHECK(kind_of(R"({"process": {"mode": "XFD"}})") == ErrorKind::SchemaError);
    CHECK(kind_of(R"({"radiation": {"approach": "hybrid"}})") == ErrorKind::SchemaError);
    CHECK(kind_of("{ not json") == ErrorKind::SchemaError);
    CHECK(kind_of(R"({"toplevel": 1})") == ErrorKind::SchemaError);
}

TEST_CASE("radiation section and occluders") {
    const ScenarioConfig c = parse_config_text(R"({
      "layout": {"arrangement": "rectangular", "nx": 4, "ny": 3, "c": "3 mm"},
      "occluders": [{"kind": "tray"}],
      "radiation": {"n_rays": 5000, "seed": 9}
    })");
    CHECK(c.scenario.approach == Approach::Network);
    CHECK(c.scenario.mc.n_rays == 5000);
    CHECK(c.scenario.mc.seed == 9);
    CHECK(c.scenario.scene.layout.size() == 12);
    REQUIRE(c.scenario.scene.occluders.size() == 1);
    CHECK(c.scenario.scene.occluders[0].closed);
    CHECK(c.scenario.scene.occluders[0].height == 0.042);
}

TEST_CASE("missing files") {
    try {
        load_config("/nonexistent/lyorad.json");
        FAIL("expected FileError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FileError);
    }
}

TEST_CASE("content hash") {
    CHECK(content_hash("") == "cbf29ce484222325");
    CHECK(content_hash("a") == "af63dc4c8601ec8c");
    CHECK(content_hash("a") != content_hash("b"));
}
