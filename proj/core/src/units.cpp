#include "lyorad/units.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <span>
#include <string>

#include "lyorad/error.h"

namespace lyorad {

namespace {

struct UnitEntry {
    const char* symbol;
    double scale;
    double offset = 0.0;
};

// Symbols are compared after dropping spaces, parentheses, '^', '*' and '.'.
constexpr UnitEntry kLength[] = {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}};
constexpr UnitEntry kArea[] = {{"m2", 1.0}, {"cm2", 1e-4}, {"mm2", 1e-6}};
constexpr UnitEntry kVolume[] = {{"m3", 1.0}, {"cm3", 1e-6}, {"mL", 1e-6}, {"ml", 1e-6},
                                 {"L", 1e-3}, {"mm3", 1e-9}};
constexpr UnitEntry kTemperature[] = {{"K", 1.0}, {"degC", 1.0, 273.15}};
constexpr UnitEntry kRate[] = {{"K/s", 1.0}, {"K/min", 1.0 / 60.0}, {"K/h", 1.0 / 3600.0}};
constexpr UnitEntry kTime[] = {{"s", 1.0}, {"min", 60.0}, {"h", 3600.0}};
constexpr UnitEntry kPower[] = {{"W", 1.0}, {"mW", 1e-3}, {"kW", 1e3}};
constexpr UnitEntry kHtc[] = {{"W/m2K", 1.0}, {"W/m2/K", 1.0}};
constexpr UnitEntry kDensity[] = {{"kg/m3", 1.0}, {"g/cm3", 1e3}, {"g/mL", 1e3}};
constexpr UnitEntry kConductivity[] = {{"W/mK", 1.0}, {"W/m/K", 1.0}};
constexpr UnitEntry kSpecificHeat[] = {{"J/kgK", 1.0}, {"J/kg/K", 1.0}, {"kJ/kgK", 1e3},
                                       {"kJ/kg/K", 1e3}};
constexpr UnitEntry kEnthalpy[] = {{"J/kg", 1.0}, {"kJ/kg", 1e3}, {"MJ/kg", 1e6}};

std::span<const UnitEntry> table(Quantity q) {
    switch (q) {
        case Quantity::Dimensionless: return {};
        case Quantity::Length: return kLength;
        case Quantity::Area: return kArea;
        case Quantity::Volume: return kVolume;
        case Quantity::Temperature: return kTemperature;
        case Quantity::TemperatureRate: return kRate;
        case Quantity::Time: return kTime;
        case Quantity::Power: return kPower;
        case Quantity::HeatTransferCoefficient: return kHtc;
        case Quantity::Density: return kDensity;
        case Quantity::Conductivity: return kConductivity;
        case Quantity::SpecificHeat: return kSpecificHeat;
        case Quantity::SpecificEnthalpy: return kEnthalpy;
    }
    return {};
}

std::string normalize(std::string_view unit) {
    std::string out;
    for (char ch : unit) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == '^' ||
            ch == '*' || ch == '.') {
            continue;
        }
        out.push_back(ch);
    }
    return out;
}

}  // namespace

const char* to_string(Quantity q) noexcept {
    switch (q) {
        case Quantity::Dimensionless: return "dimensionless";
        case Quantity::Length: return "length";
        case Quantity::Area: return "area";
        case Quantity::Volume: return "volume";
        case Quantity::Temperature: return "temperature";
        case Quantity::TemperatureRate: return "temperature rate";
        case Quantity::Time: return "time";
        case Quantity::Power: return "power";
        case Quantity::HeatTransferCoefficient: return "heat-transfer coefficient";
        case Quantity::Density: return "density";
        case Quantity::Conductivity: return "conductivity";
        case Quantity::SpecificHeat: return "specific heat";
        case Quantity::SpecificEnthalpy: return "specific enthalpy";
    }
    return "?";
}

const char* si_unit(Quantity q) noexcept {
    const auto t = table(q);
    return t.empty() ? "" : t.front().symbol;
}

double parse_quantity(std::string_view text, Quantity q) {
    std::size_t b = 0;
    while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    text.remove_prefix(b);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || !std::isfinite(value)) {
        throw Error(ErrorKind::UnitError, "'" + std::string(text) + "' does not start with a number");
    }
    const std::string unit = normalize(std::string_view(ptr, text.data() + text.size() - ptr));
    if (unit.empty()) return value;
    for (const UnitEntry& e : table(q)) {
        if (unit == e.symbol) return value * e.scale + e.offset;
    }
    throw Error(ErrorKind::UnitError,
                "unit '" + unit + "' is not a valid " + to_string(q) + " unit");
}

}  // namespace lyorad
