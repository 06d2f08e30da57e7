#pragma once

// Sealed skeleton: the skeleton is inflated to an initial gauge pressure at
// zero contraction and zero vacuum, then closed. The trapped gas obeys
// P1_abs * V = const (isothermal) while the vacuum is applied and the
// actuator contracts.

#include "hybridpam/equilibrium.hpp"
#include "hybridpam/geometry.hpp"
#include "hybridpam/statics.hpp"
#include "hybridpam/types.hpp"

namespace hybridpam {

struct GasState {
    double trapped_moles_proxy = 0.0;  // Pa m^3, absolute pressure times volume
    double sealed_volume_V0 = 0.0;     // m^3
    double sealed_absolute_P1 = 0.0;   // Pa

    /// Absolute pressure at volume `volume` for the same trapped gas.
    double pressure_at(double volume) const {
        if (!(volume > 0.0)) throw Error(Errc::VolumeCollapse, "gas volume must be > 0");
        return trapped_moles_proxy / volume;
    }
};

/// Skeleton gas volume m n W [seg(R1, theta1) + seg(R3, theta3)], end effects neglected.
inline double skeleton_volume(const ActuatorSpec& spec, const CrossSectionState& state) noexcept {
    return detail::skeleton_gas_volume(spec, state, 0.0);
}

/// Gas sealed at the zero-vacuum blocked state.
inline GasState seal_gas(const ActuatorSpec& spec, double initial_dP1,
                         double P0 = units::kStandardAtmosphere, double dead_volume = 0.0,
                         const SolverSettings& settings = {}) {
    if (!(initial_dP1 > 0.0)) throw Error(Errc::InvalidArgument, "initial_dP1 must be > 0");
    if (!(dead_volume >= 0.0)) throw Error(Errc::InvalidArgument, "dead_volume must be >= 0");
    const detail::BlockedStart start = detail::blocked_start(spec, initial_dP1, 0.0, P0, true, dead_volume, settings);
    GasState g;
    g.trapped_moles_proxy = start.gas->content;
    g.sealed_absolute_P1 = P0 + initial_dP1;
    g.sealed_volume_V0 = g.trapped_moles_proxy / g.sealed_absolute_P1;
    return g;
}

/// Force-contraction curve with a sealed skeleton. Each point records the
/// instantaneous skeleton gauge pressure.
inline Curve trace_curve_closed(const ActuatorSpec& spec, double initial_dP1, double dP2,
                                const ResistanceModel& resistance = {}, const SolverSettings& settings = {},
                                double dead_volume = 0.0, double P0 = units::kStandardAtmosphere) {
    PressureCondition cond;
    cond.positive_gauge_dP1 = initial_dP1;
    cond.negative_gauge_dP2 = dP2;
    cond.skeleton_regime = ClosedChamber{initial_dP1};
    cond.atmospheric_P0 = P0;
    cond.validate();
    if (!(dead_volume >= 0.0)) throw Error(Errc::InvalidArgument, "dead_volume must be >= 0");
    const detail::BlockedStart start =
        detail::blocked_start(spec, initial_dP1, cond.vacuum(), P0, true, dead_volume, settings);
    return detail::run_curve(spec, cond, resistance, settings, start, initial_dP1);
}

}  // namespace hybridpam
