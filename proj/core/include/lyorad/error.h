#pragma once

#include <stdexcept>
#include <string>

namespace lyorad {

enum class ErrorKind {
    NoSublimationReached,
    NegativeSublimationRate,
    LayoutTooLarge,
    GeometryConflict,
    RayEscape,
    InconsistentMatrix,
    SingularSystem,
    MissingTimeSeries,
    NoBracket,
    RadiationImmune,
    SchemaError,
    UnitError,
    FileError,
    IoError,
    InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace lyorad
