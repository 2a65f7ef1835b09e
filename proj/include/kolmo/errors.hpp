#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kolmo {

enum class ErrorKind {
    InvalidArgument,
    MeanNotZero,
    ConfigMismatch,
    NotInX,
    WrongAspect,
    DegenerateMode,
    NonFinite,
    IncompatibleDomain,
    ResonanceViolated,
    NonPositiveValue,
    WindowTooSmall,
    AspectTooSmall,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the integrator when a coefficient overflows; carries the time of the failed step.
class NonFiniteError : public Error {
public:
    NonFiniteError(double time, const std::string& what)
        : Error(ErrorKind::NonFinite, what + " at t=" + std::to_string(time)), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace kolmo
