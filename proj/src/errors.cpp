#include "kolmo/errors.hpp"

namespace kolmo {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MeanNotZero: return "MeanNotZero";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::NotInX: return "NotInX";
    case ErrorKind::WrongAspect: return "WrongAspect";
    case ErrorKind::DegenerateMode: return "DegenerateMode";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::IncompatibleDomain: return "IncompatibleDomain";
    case ErrorKind::ResonanceViolated: return "ResonanceViolated";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::AspectTooSmall: return "AspectTooSmall";
    }
    return "Unknown";
}

} // namespace kolmo
