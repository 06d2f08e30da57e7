#pragma once

/**
 * @file equilibrium.hpp
 * @brief Cross-section equilibrium of one pouch column for the four contact
 *        regimes A-D.
 *
 * Unknowns are half-angles, free arc lengths and contact lengths; radii are
 * derived (R = arc / (2 theta)), so a straight skin arc at zero vacuum is an
 * ordinary point of the system. Equations per regime:
 *
 *   all   Laplace per arc in the form T * 2 theta = dP * W * arc, with the
 *         tension given by the linear elastic law T = K (L - L0);
 *         equal spans of the outer and inner pouch walls (S1 = S3).
 *   A, C  force balance at the pouch boundary point in both directions.
 *   B, D  the skin lies on the inner wall over an arc of angle theta4 that
 *         continues the outer-wall circle; the boundary balance becomes
 *         T1 = T2 + T3 and theta3 = pi - theta2, theta4 = theta2 - theta1.
 *   C, D  skin contact strip w2 between columns with equal skin and inner
 *         wall depth, R2 (1 - cos theta2) = R3 (1 - cos theta3).
 *
 * The sweep parameter is either theta2 (fixed) or the actuator length
 * n S1 + (n-1) S2 (theta2 then becomes an unknown). A trapped-gas closure
 * adds dP1 as an unknown with P1_abs * V = const.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <optional>
#include <vector>

#include "hybridpam/errors.hpp"
#include "hybridpam/geometry.hpp"
#include "hybridpam/newton.hpp"
#include "hybridpam/types.hpp"

namespace hybridpam {

struct SolverSettings {
    double theta2_step = 0.01;       // rad
    double residual_tol = 1e-10;     // scaled max-norm
    int max_newton_iters = 100;
    double newton_damping = 1.0;     // initial step fraction; halved on residual increase
    bool zero_force_interp = true;
    double cr_step = 0.005;          // sweep step when the skin arc is straight (dP2 == 0)
    int max_substep_levels = 6;      // retry a failed step with up to 2^levels sub-steps

    void validate() const {
        if (!(theta2_step > 0.0)) throw Error(Errc::InvalidArgument, "theta2_step must be > 0");
        if (!(residual_tol > 0.0)) throw Error(Errc::InvalidArgument, "residual_tol must be > 0");
        if (max_newton_iters < 1) throw Error(Errc::InvalidArgument, "max_newton_iters must be >= 1");
        if (!(newton_damping > 0.0 && newton_damping <= 1.0)) {
            throw Error(Errc::InvalidArgument, "newton_damping must be in (0, 1]");
        }
        if (!(cr_step > 0.0)) throw Error(Errc::InvalidArgument, "cr_step must be > 0");
    }
};

/// Trapped skeleton gas: absolute pressure times volume at sealing.
struct GasClosure {
    double content = 0.0;      // Pa m^3
    double dead_volume = 0.0;  // m^3 of tubing and connectors
};

/// What is held fixed in one solve.
struct SolveMode {
    ModelVariant variant = ModelVariant::A;
    std::optional<double> theta2;         // fixed theta2, or
    std::optional<double> target_length;  // fixed n S1 + (n-1) S2 with theta2 free
    std::optional<GasClosure> gas;        // dP1 free, gas law added
};

namespace detail {

/// Total skeleton gas volume m n W A_pouch + dead volume.
inline double skeleton_gas_volume(const ActuatorSpec& spec, const CrossSectionState& state,
                                  double dead_volume) noexcept {
    return spec.layers_m * spec.columns_n * spec.width_W * pouch_cross_section_area(state) + dead_volume;
}

/// Free variables of a cross-section in SI units.
struct ArcVars {
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;
    double arc1 = 0.0, arc2 = 0.0, arc3 = 0.0;
    double w1 = 0.0, w2 = 0.0;
    double dP1 = 0.0;
};

inline ArcVars vars_from_state(const CrossSectionState& s) {
    ArcVars v;
    v.theta1 = s.theta1;
    v.theta2 = s.theta2;
    v.theta3 = s.theta3;
    v.arc1 = s.arc1;
    v.arc2 = s.arc2;
    v.arc3 = s.arc3;
    v.w1 = s.contact_w1;
    v.w2 = s.contact_w2;
    v.dP1 = s.dP1;
    return v;
}

/// Evaluates every derived quantity of a cross-section from its free variables.
inline CrossSectionState build_state(const ActuatorSpec& spec, ModelVariant variant, const ArcVars& v,
                                     double dP2) {
    CrossSectionState s;
    s.variant = variant;
    s.dP1 = v.dP1;
    s.dP2 = dP2;
    s.theta1 = v.theta1;
    s.theta2 = v.theta2;
    const bool overlap = has_overlap(variant);
    const bool skin_contact = has_skin_contact(variant);
    s.theta4 = overlap ? v.theta2 - v.theta1 : 0.0;
    s.theta3 = overlap ? std::numbers::pi - v.theta2 : v.theta3;
    s.arc1 = v.arc1;
    s.arc2 = v.arc2;
    s.arc3 = v.arc3;
    s.contact_w1 = v.w1;
    s.contact_w2 = skin_contact ? v.w2 : 0.0;

    const ArcSegment c1{s.arc1, s.theta1};
    const ArcSegment c2{s.arc2, s.theta2};
    const ArcSegment c3{s.arc3, s.theta3};
    s.kappa1 = c1.curvature();
    s.kappa2 = c2.curvature();
    s.kappa3 = c3.curvature();

    // Overlap arc continues the outer-wall circle (radius R1) by theta4.
    double overlap_length = 0.0;
    double overlap_dx = 0.0;
    if (overlap && s.theta1 > 0.0) {
        const double r1 = c1.radius();
        overlap_length = 2.0 * r1 * s.theta4;
        overlap_dx = r1 * (std::sin(s.theta1 + s.theta4) - std::sin(s.theta1));
    }
    s.L1 = s.arc1;
    s.L2 = s.arc2 + overlap_length + s.contact_w2;
    s.L3 = s.arc3 + overlap_length + s.contact_w1;
    s.T1 = spec.stiffness_1() * (s.L1 - spec.rest_length_1());
    s.T2 = spec.stiffness_2() * (s.L2 - spec.rest_length_2());
    s.T3 = spec.stiffness_3() * (s.L3 - spec.rest_length_3());
    s.S1 = c1.span();
    s.S2 = c2.span() + s.contact_w2 + 2.0 * overlap_dx;
    s.S3 = c3.span() + s.contact_w1 - 2.0 * overlap_dx;
    s.sag2 = c2.sagitta();
    s.sag3 = c3.sagitta();
    s.section_height_H = section_height(s);
    return s;
}

inline double actuator_length(const ActuatorSpec& spec, const CrossSectionState& s) noexcept {
    return spec.columns_n * s.S1 + (spec.columns_n - 1) * s.S2;
}

/**
 * The residual system for one (variant, mode). Unknowns are packed into a
 * dimensionless vector: lengths over L10, pressure over P0.
 */
class CrossSectionSystem {
public:
    CrossSectionSystem(const ActuatorSpec& spec, double dP1_nominal, double vacuum, double P0,
                       const SolveMode& mode)
        : spec_(spec), vacuum_(vacuum), P0_(P0), mode_(mode), dP1_fixed_(dP1_nominal) {
        length_scale_ = spec.pouch_length_L10;
        const double p_scale = std::max({dP1_nominal, vacuum, 1000.0});
        force_scale_ = p_scale * spec.width_W * length_scale_;
    }

    std::size_t size() const noexcept {
        std::size_t n = 5;  // theta1, arc1, arc2, arc3, w1
        if (!has_overlap(mode_.variant)) ++n;      // theta3
        if (has_skin_contact(mode_.variant)) ++n;  // w2
        if (!mode_.theta2) ++n;                    // theta2
        if (mode_.gas) ++n;                        // dP1
        return n;
    }

    Vec pack(const ArcVars& v) const {
        Vec x;
        x.reserve(size());
        x.push_back(v.theta1);
        x.push_back(v.arc1 / length_scale_);
        x.push_back(v.arc2 / length_scale_);
        x.push_back(v.arc3 / length_scale_);
        x.push_back(v.w1 / length_scale_);
        if (!has_overlap(mode_.variant)) x.push_back(v.theta3);
        if (has_skin_contact(mode_.variant)) x.push_back(v.w2 / length_scale_);
        if (!mode_.theta2) x.push_back(v.theta2);
        if (mode_.gas) x.push_back(v.dP1 / P0_);
        return x;
    }

    ArcVars unpack(const Vec& x) const {
        ArcVars v;
        std::size_t i = 0;
        v.theta1 = x[i++];
        v.arc1 = x[i++] * length_scale_;
        v.arc2 = x[i++] * length_scale_;
        v.arc3 = x[i++] * length_scale_;
        v.w1 = x[i++] * length_scale_;
        v.theta3 = has_overlap(mode_.variant) ? 0.0 : x[i++];
        v.w2 = has_skin_contact(mode_.variant) ? x[i++] * length_scale_ : 0.0;
        v.theta2 = mode_.theta2 ? *mode_.theta2 : x[i++];
        v.dP1 = mode_.gas ? x[i++] * P0_ : dP1_fixed_;
        return v;
    }

    CrossSectionState state(const Vec& x) const {
        return build_state(spec_, mode_.variant, unpack(x), -vacuum_);
    }

    /// Residual vector, or nullopt outside the admissible domain.
    std::optional<Vec> operator()(const Vec& x) const {
        const ArcVars v = unpack(x);
        constexpr double pi = std::numbers::pi;
        if (!(v.theta1 > 0.0 && v.theta1 < pi)) return std::nullopt;
        if (!(v.theta2 > -0.5 && v.theta2 < pi)) return std::nullopt;
        if (!has_overlap(mode_.variant) && !(v.theta3 > 0.0 && v.theta3 < pi)) return std::nullopt;
        if (!(v.arc1 > 0.0 && v.arc2 > 0.0 && v.arc3 > 0.0)) return std::nullopt;
        if (mode_.gas && !(v.dP1 + P0_ > 0.0)) return std::nullopt;

        const CrossSectionState s = build_state(spec_, mode_.variant, v, -vacuum_);
        const double W = spec_.width_W;
        const double F = force_scale_;
        const double L = length_scale_;

        Vec r;
        r.reserve(size());
        r.push_back((s.T1 * 2.0 * s.theta1 - v.dP1 * W * s.arc1) / F);
        r.push_back((s.T2 * 2.0 * s.theta2 - vacuum_ * W * s.arc2) / F);
        r.push_back((s.T3 * 2.0 * s.theta3 - (v.dP1 + vacuum_) * W * s.arc3) / F);
        r.push_back((s.S1 - s.S3) / L);
        if (has_overlap(mode_.variant)) {
            r.push_back((s.T1 - s.T2 - s.T3) / F);
        } else {
            r.push_back((s.T1 * std::cos(s.theta1) + s.T3 * std::cos(s.theta3) - s.T2 * std::cos(s.theta2)) / F);
            r.push_back((s.T1 * std::sin(s.theta1) - s.T2 * std::sin(s.theta2) - s.T3 * std::sin(s.theta3)) / F);
        }
        if (has_skin_contact(mode_.variant)) r.push_back((s.sag2 - s.sag3) / L);
        if (!mode_.theta2) {
            r.push_back((actuator_length(spec_, s) - *mode_.target_length) / spec_.initial_length());
        }
        if (mode_.gas) {
            const double volume = skeleton_gas_volume(spec_, s, mode_.gas->dead_volume);
            r.push_back(((P0_ + v.dP1) * volume - mode_.gas->content) / mode_.gas->content);
        }
        return r;
    }

    double length_scale() const noexcept { return length_scale_; }

private:
    const ActuatorSpec& spec_;
    double vacuum_;
    double P0_;
    SolveMode mode_;
    double dP1_fixed_;
    double length_scale_ = 1.0;
    double force_scale_ = 1.0;
};

/// Rejects solutions that violate the closure conditions of their variant.
inline void check_variant_closure(const CrossSectionState& s, double length_scale) {
    const double tol = 1e-9 * length_scale;
    if (s.contact_w1 < -tol) {
        throw Error(Errc::InvalidVariant, "inner walls separate (w1 < 0)");
    }
    if (has_overlap(s.variant) && s.theta4 < -1e-9) {
        throw Error(Errc::InvalidVariant, "negative overlap angle (theta4 < 0)");
    }
    if (has_skin_contact(s.variant) && s.contact_w2 < -tol) {
        throw Error(Errc::InvalidVariant, "negative skin contact length (w2 < 0)");
    }
    if (s.theta2 < -1e-12) {
        throw Error(Errc::InvalidVariant, "skin arc bulges outward (theta2 < 0)");
    }
}

/// Solves one system from a warm start, with closure checks.
inline CrossSectionState solve_mode(const ActuatorSpec& spec, double dP1, double vacuum, double P0,
                                    const SolveMode& mode, const CrossSectionState& guess,
                                    const SolverSettings& settings) {
    CrossSectionSystem system(spec, dP1, vacuum, P0, mode);
    ArcVars start = vars_from_state(guess);
    if (!mode.gas) start.dP1 = dP1;
    if (mode.theta2) start.theta2 = *mode.theta2;
    if (has_overlap(mode.variant) && !has_overlap(guess.variant)) {
        // Entering an overlap regime: the free inner-wall arc keeps its length.
        start.theta1 = std::min(start.theta1, start.theta2);
    }
    if (has_skin_contact(mode.variant) && !has_skin_contact(guess.variant)) {
        start.w2 = 1e-6 * spec.pouch_length_L10;
    }
    if (!has_overlap(mode.variant) && has_overlap(guess.variant)) {
        start.theta3 = guess.theta3;
    }

    NewtonOptions opt;
    opt.tolerance = settings.residual_tol;
    opt.max_iterations = settings.max_newton_iters;
    opt.initial_step = settings.newton_damping;
    NewtonResult res = damped_newton(system, system.pack(start), opt);
    if (!res.converged) {
        throw NoConvergence(std::string("cross-section solve, variant ") + to_char(mode.variant),
                            res.residual);
    }
    CrossSectionState s = system.state(res.x);
    check_variant_closure(s, system.length_scale());
    if (s.contact_w1 < 0.0) s.contact_w1 = 0.0;
    if (s.contact_w2 < 0.0) s.contact_w2 = 0.0;
    if (s.theta2 < 0.0) s.theta2 = 0.0;
    return s;
}

/// Unpressurised stress-free state: every arc straight at its rest length.
inline CrossSectionState flat_state(const ActuatorSpec& spec) {
    ArcVars v;
    v.arc1 = spec.rest_length_1();
    v.arc2 = spec.rest_length_2();
    v.arc3 = spec.rest_length_3();
    CrossSectionState s = build_state(spec, ModelVariant::A, v, 0.0);
    s.kappa1 = s.kappa2 = s.kappa3 = 0.0;
    return s;
}

/**
 * Zero-vacuum state at a given actuator length: both pouch walls are the
 * same circular arc (equal stiffness and rest length), the skin is straight
 * and carries T2 = 2 T1 cos(theta). One scalar bisection on theta.
 */
inline std::optional<CrossSectionState> symmetric_inflation(const ActuatorSpec& spec, double dP1,
                                                            double target_length) {
    const double K1 = spec.stiffness_1();
    const double K2 = spec.stiffness_2();
    const double L10 = spec.rest_length_1();
    const double L20 = spec.rest_length_2();
    const double W = spec.width_W;
    const int n = spec.columns_n;
    const double theta_min = dP1 * W / (2.0 * K1);
    if (!(theta_min < std::numbers::pi / 2.0)) return std::nullopt;

    struct Eval {
        double gap, radius, t1, t2, s2;
    };
    auto eval = [&](double theta) {
        Eval e;
        e.radius = K1 * L10 / (2.0 * K1 * theta - dP1 * W);
        e.t1 = dP1 * e.radius * W;
        e.t2 = 2.0 * e.t1 * std::cos(theta);
        e.s2 = L20 + e.t2 / K2;
        const double s1 = 2.0 * e.radius * std::sin(theta);
        e.gap = n * s1 + (n - 1) * e.s2 - target_length;
        return e;
    };
    double lo = theta_min * (1.0 + 1e-12) + 1e-12;
    double hi = std::numbers::pi / 2.0;
    if (eval(lo).gap < 0.0 || eval(hi).gap > 0.0) return std::nullopt;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid).gap > 0.0 ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const Eval e = eval(theta);
    ArcVars v;
    v.theta1 = v.theta3 = theta;
    v.arc1 = v.arc3 = 2.0 * e.radius * theta;
    v.theta2 = 0.0;
    v.arc2 = e.s2;
    v.w1 = 0.0;
    v.dP1 = dP1;
    return build_state(spec, ModelVariant::A, v, 0.0);
}

}  // namespace detail

/**
 * Regime for the next continuation step. Transitions only move forward:
 * A -> B and C -> D once theta1 <= theta2; A -> C and B -> D once the skin
 * sags deeper than the inner wall.
 */
inline ModelVariant classify_variant(const CrossSectionState& s) noexcept {
    const bool wraps = s.theta1 <= s.theta2;
    const bool skins_touch = s.sag2 > s.sag3;
    switch (s.variant) {
        case ModelVariant::A:
            if (wraps && skins_touch) return ModelVariant::D;
            if (wraps) return ModelVariant::B;
            if (skins_touch) return ModelVariant::C;
            return ModelVariant::A;
        case ModelVariant::B: return skins_touch ? ModelVariant::D : ModelVariant::B;
        case ModelVariant::C: return wraps ? ModelVariant::D : ModelVariant::C;
        case ModelVariant::D: return ModelVariant::D;
    }
    return s.variant;
}

/// Scaled residuals of a state against its variant's equations, evaluated
/// from the stored fields (radii, angles, tensions) rather than the solver's
/// unknowns. Used to audit solutions.
inline std::vector<double> state_residuals(const ActuatorSpec& spec, const CrossSectionState& s) {
    const double W = spec.width_W;
    const double L = spec.pouch_length_L10;
    const double p_scale = std::max({s.dP1, -s.dP2, 1000.0});
    const double F = p_scale * W * L;
    std::vector<double> r;
    r.push_back((s.T1 * s.kappa1 - s.dP1 * W) * L / F);
    r.push_back((s.T2 * s.kappa2 + s.dP2 * W) * L / F);
    r.push_back((s.T3 * s.kappa3 - (s.dP1 - s.dP2) * W) * L / F);
    r.push_back((s.T1 - spec.stiffness_1() * (s.L1 - spec.rest_length_1())) / F);
    r.push_back((s.T2 - spec.stiffness_2() * (s.L2 - spec.rest_length_2())) / F);
    r.push_back((s.T3 - spec.stiffness_3() * (s.L3 - spec.rest_length_3())) / F);
    r.push_back((s.S1 - s.S3) / L);
    if (has_overlap(s.variant)) {
        r.push_back((s.T1 - s.T2 - s.T3) / F);
        r.push_back(s.theta1 + s.theta3 + s.theta4 - std::numbers::pi);
        r.push_back(s.theta2 - s.theta1 - s.theta4);
    } else {
        r.push_back((s.T1 * std::cos(s.theta1) + s.T3 * std::cos(s.theta3) - s.T2 * std::cos(s.theta2)) / F);
        r.push_back((s.T1 * std::sin(s.theta1) - s.T2 * std::sin(s.theta2) - s.T3 * std::sin(s.theta3)) / F);
    }
    if (has_skin_contact(s.variant)) r.push_back((s.sag2 - s.sag3) / L);
    return r;
}

}  // namespace hybridpam
