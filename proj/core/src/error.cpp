#include "lyorad/error.h"

namespace lyorad {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NoSublimationReached: return "NoSublimationReached";
        case ErrorKind::NegativeSublimationRate: return "NegativeSublimationRate";
        case ErrorKind::LayoutTooLarge: return "LayoutTooLarge";
        case ErrorKind::GeometryConflict: return "GeometryConflict";
        case ErrorKind::RayEscape: return "RayEscape";
        case ErrorKind::InconsistentMatrix: return "InconsistentMatrix";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::MissingTimeSeries: return "MissingTimeSeries";
        case ErrorKind::NoBracket: return "NoBracket";
        case ErrorKind::RadiationImmune: return "RadiationImmune";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::UnitError: return "UnitError";
        case ErrorKind::FileError: return "FileError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace lyorad
