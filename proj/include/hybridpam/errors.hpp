#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hybridpam {

enum class Errc {
    InvalidArgument,
    NonPositiveRadius,
    NoConvergence,
    InvalidVariant,
    UnsupportedVariant,
    NoBlockedState,
    VolumeCollapse,
    InfeasibleGeometry,
    EmptyTrace,
    NonMonotonicTime,
    ZeroInputEnergy,
    InsufficientData,
    DegenerateFit,
    DuplicatePressure,
    MalformedCode,
    Schema,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NonPositiveRadius: return "NonPositiveRadius";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::InvalidVariant: return "InvalidVariant";
        case Errc::UnsupportedVariant: return "UnsupportedVariant";
        case Errc::NoBlockedState: return "NoBlockedState";
        case Errc::VolumeCollapse: return "VolumeCollapse";
        case Errc::InfeasibleGeometry: return "InfeasibleGeometry";
        case Errc::EmptyTrace: return "EmptyTrace";
        case Errc::NonMonotonicTime: return "NonMonotonicTime";
        case Errc::ZeroInputEnergy: return "ZeroInputEnergy";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::DegenerateFit: return "DegenerateFit";
        case Errc::DuplicatePressure: return "DuplicatePressure";
        case Errc::MalformedCode: return "MalformedCode";
        case Errc::Schema: return "Schema";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Newton iteration ran out of iterations; `residual()` is the last max-norm.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double residual)
        : Error(Errc::NoConvergence, what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace hybridpam
