#pragma once

/**
 * @file statics.hpp
 * @brief Output force, blocked state and force-contraction continuation.
 *
 * The blocked state (zero contraction) is reached by a pressure homotopy:
 * at zero vacuum the cross-section has a closed-form symmetric solution,
 * and the vacuum is then raised to its target in small steps with the
 * actuator length held at n L10 + (n-1) L20. From there theta2 is advanced
 * in fixed increments until the output force drops to zero. With no vacuum
 * the skin stays straight (theta2 = 0), so that case steps the contraction
 * ratio instead.
 */

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "hybridpam/equilibrium.hpp"
#include "hybridpam/errors.hpp"
#include "hybridpam/geometry.hpp"
#include "hybridpam/resistance.hpp"
#include "hybridpam/types.hpp"

namespace hybridpam {

struct ForceResult {
    double F = 0.0;   // N
    double Fr = 0.0;  // N
};

/// Fractional length decrease (Ssum0 - Ssum) / Ssum0 against the designed length.
inline double contraction_ratio(const ActuatorSpec& spec, const CrossSectionState& state) noexcept {
    const double s0 = spec.initial_length();
    return (s0 - detail::actuator_length(spec, state)) / s0;
}

/// Output force: 2 T2 + (P0 - P2) H W - Fr in A/B, 2 T2 - Fr once the skins touch.
inline ForceResult force_at_state(const ActuatorSpec& spec, const PressureCondition& cond,
                                  const CrossSectionState& state, const ResistanceModel& resistance) {
    ForceResult out;
    const double contraction = spec.initial_length() - detail::actuator_length(spec, state);
    out.Fr = resistance.kr(state.dP1) * contraction;
    double push = 0.0;
    if (!has_skin_contact(state.variant)) push = cond.vacuum() * section_height(state) * spec.width_W;
    out.F = 2.0 * state.T2 + push - out.Fr;
    return out;
}

struct ForceDecomposition {
    struct CutI {
        double tension_2T2 = 0.0;
        double push_P0P2HW = 0.0;
    } cut_I;
    struct CutII {
        double tension_2T1_2T3 = 0.0;
        double push_2P1P0H1W = 0.0;  // opposes contraction, enters with a minus sign
    } cut_II;
    double Fr = 0.0;

    double cut_I_total() const noexcept { return cut_I.tension_2T2 + cut_I.push_P0P2HW; }
    double cut_II_total() const noexcept { return cut_II.tension_2T1_2T3 - cut_II.push_2P1P0H1W; }
};

/**
 * The output force from two vertical cuts: one through the gap between
 * columns (skin tension plus vacuum push on the void), one through the
 * middle of a pouch (wall tensions minus the skeleton pressure on the pouch
 * height H1 = R1 (1 - cos(theta1 + theta4)) + R3 (1 - cos theta3)).
 */
inline ForceDecomposition force_decomposition(const ActuatorSpec& spec, const PressureCondition& cond,
                                              const CrossSectionState& state,
                                              const ResistanceModel& resistance) {
    if (has_skin_contact(state.variant)) {
        throw Error(Errc::UnsupportedVariant, "force decomposition needs an open void (variant A or B)");
    }
    const double W = spec.width_W;
    ForceDecomposition d;
    d.Fr = force_at_state(spec, cond, state, resistance).Fr;
    d.cut_I.tension_2T2 = 2.0 * state.T2;
    d.cut_I.push_P0P2HW = cond.vacuum() * section_height(state) * W;
    const double outer_angle = state.theta1 + state.theta4;
    const double outer_rise =
        state.theta1 > 0.0 ? 0.5 * state.arc1 * (1.0 - std::cos(outer_angle)) / state.theta1 : 0.0;
    const double h1 = outer_rise + state.sag3;
    d.cut_II.tension_2T1_2T3 = 2.0 * state.T1 + 2.0 * state.T3;
    d.cut_II.push_2P1P0H1W = 2.0 * state.dP1 * h1 * W;
    return d;
}

namespace detail {

/// One parameter continuation: fixed pressures (or trapped gas), variant
/// switching, step halving on failure.
class Continuation {
public:
    Continuation(const ActuatorSpec& spec, double dP1, double vacuum, double P0,
                 std::optional<GasClosure> gas, const SolverSettings& settings)
        : spec_(spec), dP1_(dP1), vacuum_(vacuum), P0_(P0), gas_(gas), settings_(settings) {}

    CrossSectionState at_theta2(ModelVariant v, double theta2, const CrossSectionState& guess) const {
        SolveMode mode;
        mode.variant = v;
        mode.theta2 = theta2;
        mode.gas = gas_;
        return checked(solve_mode(spec_, dP1_, vacuum_, P0_, mode, guess, settings_));
    }

    CrossSectionState at_length(ModelVariant v, double length, const CrossSectionState& guess) const {
        SolveMode mode;
        mode.variant = v;
        mode.target_length = length;
        mode.gas = gas_;
        return checked(solve_mode(spec_, dP1_, vacuum_, P0_, mode, guess, settings_));
    }

    /// Same system at another vacuum level.
    Continuation with_vacuum(double vacuum) const {
        return Continuation(spec_, dP1_, vacuum, P0_, gas_, settings_);
    }

    const std::optional<GasClosure>& gas() const noexcept { return gas_; }

private:
    CrossSectionState checked(CrossSectionState s) const {
        if (gas_) {
            const double volume = skeleton_gas_volume(spec_, s, gas_->dead_volume);
            if (volume < 1e-9) throw Error(Errc::VolumeCollapse, "skeleton gas volume below 1e-9 m^3");
        }
        return s;
    }

    const ActuatorSpec& spec_;
    double dP1_;
    double vacuum_;
    double P0_;
    std::optional<GasClosure> gas_;
    const SolverSettings& settings_;
};

/// Solves at length `length`, re-solving under the next variant while the
/// classification moves forward.
inline CrossSectionState settle_at_length(const Continuation& c, double length, CrossSectionState guess) {
    CrossSectionState s = c.at_length(guess.variant, length, guess);
    for (int i = 0; i < 3; ++i) {
        const ModelVariant next = classify_variant(s);
        if (next == s.variant) break;
        s = c.at_length(next, length, s);
    }
    return s;
}

/// Zero-contraction state under (dP1, vacuum); with `sealed` the skeleton
/// gas is trapped at dP1 before the vacuum is applied.
struct BlockedStart {
    CrossSectionState state;
    std::optional<GasClosure> gas;
};

inline BlockedStart blocked_start(const ActuatorSpec& spec, double dP1, double vacuum, double P0,
                                  bool sealed, double dead_volume, const SolverSettings& settings) {
    spec.validate();
    settings.validate();
    if (!(dP1 > 0.0)) throw Error(Errc::NoBlockedState, "no inflated skeleton (dP1 <= 0)");
    if (spec.layers_m != 2) {
        throw Error(Errc::InvalidArgument, "the cross-section model needs layers_m == 2");
    }
    const double s0 = spec.initial_length();
    std::optional<CrossSectionState> start = symmetric_inflation(spec, dP1, s0);
    if (!start) throw Error(Errc::NoBlockedState, "zero contraction is not reachable at this pressure");

    BlockedStart out;
    if (sealed) {
        GasClosure g;
        g.dead_volume = dead_volume;
        const double volume = skeleton_gas_volume(spec, *start, dead_volume);
        if (volume < 1e-9) throw Error(Errc::VolumeCollapse, "sealed skeleton volume below 1e-9 m^3");
        g.content = (P0 + dP1) * volume;
        out.gas = g;
    }
    const Continuation base(spec, dP1, 0.0, P0, out.gas, settings);
    CrossSectionState s = *start;
    if (vacuum > 0.0) {
        // Vacuum homotopy at fixed length, halving the increment on failure.
        double q = 0.0;
        double dq = vacuum / 16.0;
        const double dq_min = vacuum * 1e-6;
        while (q < vacuum) {
            const double q_next = std::min(vacuum, q + dq);
            try {
                s = settle_at_length(base.with_vacuum(q_next), s0, s);
                q = q_next;
                dq = std::min(dq * 1.5, vacuum / 8.0);
            } catch (const Error& e) {
                if (e.code() == Errc::VolumeCollapse) throw;
                dq *= 0.5;
                if (dq < dq_min) {
                    throw Error(Errc::NoBlockedState,
                                std::string("blocked state lost during vacuum ramp: ") + e.what());
                }
            }
        }
    } else if (out.gas) {
        s = base.at_length(ModelVariant::A, s0, s);
    }
    out.state = s;
    return out;
}

inline CurvePoint make_point(const ActuatorSpec& spec, const PressureCondition& cond,
                             const CrossSectionState& s, const ResistanceModel& resistance) {
    CurvePoint p;
    p.state = s;
    p.theta2 = s.theta2;
    p.contraction_ratio_CR = contraction_ratio(spec, s);
    p.actuator_length_Ssum = actuator_length(spec, s);
    p.skeleton_gauge_dP1 = s.dP1;
    const ForceResult f = force_at_state(spec, cond, s, resistance);
    p.output_force_F = f.F;
    p.resistance_Fr = f.Fr;
    return p;
}

/// Advances from the blocked state until the output force reaches zero.
inline Curve run_curve(const ActuatorSpec& spec, const PressureCondition& cond,
                       const ResistanceModel& resistance, const SolverSettings& settings,
                       const BlockedStart& start, double dP1_nominal) {
    const double vacuum = cond.vacuum();
    const Continuation cont(spec, dP1_nominal, vacuum, cond.atmospheric_P0, start.gas, settings);
    const double s0 = spec.initial_length();
    constexpr double theta2_limit = std::numbers::pi - 1e-3;

    Curve curve;
    curve.spec = spec;
    curve.condition = cond;

    CurvePoint first = make_point(spec, cond, start.state, resistance);
    first.contraction_ratio_CR = 0.0;  // held at Ssum0 by construction
    first.resistance_Fr = 0.0;
    first.output_force_F = force_at_state(spec, cond, start.state, ResistanceModel::none()).F;
    first.actuator_length_Ssum = s0;
    curve.points.push_back(first);

    const bool straight_skin = !(vacuum > 0.0);
    const double base_step = straight_skin ? settings.cr_step : settings.theta2_step;
    CrossSectionState state = start.state;
    double param = straight_skin ? 0.0 : state.theta2;

    // Once the skin-skin strip has opened (w2 < 0) the curve stays contact-free.
    bool released = false;
    auto without_contact = [](ModelVariant v) {
        return v == ModelVariant::C ? ModelVariant::A : v == ModelVariant::D ? ModelVariant::B : v;
    };
    auto solve_variant = [&](ModelVariant v, double p, const CrossSectionState& guess) {
        if (straight_skin) return cont.at_length(v, s0 * (1.0 - p), guess);
        return cont.at_theta2(v, p, guess);
    };
    auto solve_at = [&](double p, const CrossSectionState& guess) {
        const ModelVariant v = released ? without_contact(guess.variant) : guess.variant;
        try {
            return solve_variant(v, p, guess);
        } catch (const Error& e) {
            if (e.code() != Errc::InvalidVariant || !has_skin_contact(v) || guess.contact_w2 > 0.05 * spec.gap_length_L20) {
                throw;
            }
            CrossSectionState s = solve_variant(without_contact(v), p, guess);
            released = true;
            return s;
        }
    };

    while (true) {
        if (!straight_skin && param + base_step >= theta2_limit) {
            curve.truncated = true;
            curve.truncation_reason = "theta2 reached pi before the force vanished";
            break;
        }
        if (straight_skin && param + base_step >= 1.0) {
            curve.truncated = true;
            curve.truncation_reason = "contraction ratio reached 1 before the force vanished";
            break;
        }
        // Take one full step, splitting it into sub-steps when a solve fails.
        const double target = param + base_step;
        std::optional<CrossSectionState> next;
        std::string failure;
        for (int level = 0; level <= settings.max_substep_levels && !next; ++level) {
            const int parts = 1 << level;
            CrossSectionState s = state;
            try {
                for (int k = 1; k <= parts; ++k) s = solve_at(param + base_step * k / parts, s);
                next = s;
            } catch (const Error& e) {
                if (e.code() == Errc::VolumeCollapse) {
                    failure = e.what();
                    break;
                }
                failure = e.what();
            }
        }
        if (!next) {
            curve.truncated = true;
            curve.truncation_reason = failure;
            break;
        }
        param = target;
        const CurvePoint prev = curve.points.back();
        CurvePoint pt = make_point(spec, cond, *next, resistance);
        if (pt.output_force_F <= 0.0) {
            if (settings.zero_force_interp) {
                const double fa = prev.output_force_F;
                const double fb = pt.output_force_F;
                const double f = fa / (fa - fb);
                const double cr = prev.contraction_ratio_CR + f * (pt.contraction_ratio_CR - prev.contraction_ratio_CR);
                CurvePoint end = pt;
                try {
                    const CrossSectionState s = cont.at_length(next->variant, s0 * (1.0 - cr), prev.state);
                    end = make_point(spec, cond, s, resistance);
                } catch (const Error&) {
                    end.theta2 = prev.theta2 + f * (pt.theta2 - prev.theta2);
                }
                end.contraction_ratio_CR = cr;
                end.actuator_length_Ssum = s0 * (1.0 - cr);
                end.resistance_Fr = resistance.kr(end.skeleton_gauge_dP1) * s0 * cr;
                end.output_force_F = 0.0;
                curve.points.push_back(end);
            } else {
                curve.points.push_back(pt);
            }
            break;
        }
        curve.points.push_back(pt);
        state = *next;
        state.variant = classify_variant(state);
        if (released) state.variant = without_contact(state.variant);
    }
    curve.terminal_CR_max = curve.points.back().contraction_ratio_CR;
    return curve;
}

}  // namespace detail

/// Zero-contraction equilibrium (CR = 0) for the given pressures.
inline CrossSectionState blocked_state(const ActuatorSpec& spec, const PressureCondition& cond,
                                       const SolverSettings& settings = {}) {
    cond.validate();
    if (const auto* closed = std::get_if<ClosedChamber>(&cond.skeleton_regime)) {
        return detail::blocked_start(spec, closed->initial_dP1, cond.vacuum(), cond.atmospheric_P0, true, 0.0,
                                     settings)
            .state;
    }
    return detail::blocked_start(spec, cond.positive_gauge_dP1, cond.vacuum(), cond.atmospheric_P0, false,
                                 0.0, settings)
        .state;
}

struct BlockedForce {
    double F = 0.0;  // N
    CrossSectionState state;
};

/// Output force at zero contraction. Fr vanishes there by definition.
inline BlockedForce blocked_force(const ActuatorSpec& spec, const PressureCondition& cond,
                                  const ResistanceModel& resistance = {}, const SolverSettings& settings = {}) {
    (void)resistance;
    BlockedForce out;
    out.state = blocked_state(spec, cond, settings);
    out.F = force_at_state(spec, cond, out.state, ResistanceModel::none()).F;
    return out;
}

/// Force-contraction curve under constant skeleton pressure.
inline Curve trace_curve(const ActuatorSpec& spec, const PressureCondition& cond,
                         const ResistanceModel& resistance = {}, const SolverSettings& settings = {}) {
    cond.validate();
    if (cond.closed()) {
        throw Error(Errc::InvalidArgument, "trace_curve expects a constant-pressure condition");
    }
    const detail::BlockedStart start = detail::blocked_start(
        spec, cond.positive_gauge_dP1, cond.vacuum(), cond.atmospheric_P0, false, 0.0, settings);
    return detail::run_curve(spec, cond, resistance, settings, start, cond.positive_gauge_dP1);
}

/**
 * One equilibrium at a prescribed theta2 under a given variant. Without a
 * warm start the solve is continued from the blocked state in theta2 steps.
 * Zero pressures return the stress-free flat state.
 */
inline CrossSectionState solve_equilibrium(const ActuatorSpec& spec, const PressureCondition& cond,
                                           double theta2, ModelVariant variant,
                                           const std::optional<CrossSectionState>& warm_start = std::nullopt,
                                           const SolverSettings& settings = {}) {
    spec.validate();
    cond.validate();
    settings.validate();
    const double dP1 = cond.closed() ? std::get<ClosedChamber>(cond.skeleton_regime).initial_dP1
                                     : cond.positive_gauge_dP1;
    if (dP1 == 0.0 && cond.vacuum() == 0.0) return detail::flat_state(spec);
    if (!(theta2 > 0.0 && theta2 < std::numbers::pi)) {
        throw Error(Errc::InvalidArgument, "theta2 must lie in (0, pi)");
    }
    std::optional<GasClosure> gas;
    CrossSectionState guess;
    if (warm_start) {
        guess = *warm_start;
        if (cond.closed()) {
            gas = detail::blocked_start(spec, dP1, 0.0, cond.atmospheric_P0, true, 0.0, settings).gas;
        }
    } else {
        const detail::BlockedStart start =
            detail::blocked_start(spec, dP1, cond.vacuum(), cond.atmospheric_P0, cond.closed(), 0.0, settings);
        gas = start.gas;
        guess = start.state;
    }
    const detail::Continuation cont(spec, dP1, cond.vacuum(), cond.atmospheric_P0, gas, settings);
    if (!warm_start) {
        guess.variant = variant;
        const double from = guess.theta2;
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(theta2 - from) / settings.theta2_step)));
        for (int k = 1; k < steps; ++k) {
            guess = cont.at_theta2(variant, from + (theta2 - from) * k / steps, guess);
        }
    }
    guess.variant = variant;
    return cont.at_theta2(variant, theta2, guess);
}

}  // namespace hybridpam
