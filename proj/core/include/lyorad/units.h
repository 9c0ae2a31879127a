#pragma once

#include <string>
#include <string_view>

namespace lyorad {

enum class Quantity {
    Dimensionless,
    Length,
    Area,
    Volume,
    Temperature,
    TemperatureRate,
    Time,
    Power,
    HeatTransferCoefficient,
    Density,
    Conductivity,
    SpecificHeat,
    SpecificEnthalpy,
};

const char* to_string(Quantity q) noexcept;

// SI unit written by the serializer for each quantity.
const char* si_unit(Quantity q) noexcept;

// "0.5 cm", "1 K/min", "2840 kJ/kg". A bare number is taken as SI.
// Throws UnitError on unknown or mismatched units.
double parse_quantity(std::string_view text, Quantity q);

}  // namespace lyorad
