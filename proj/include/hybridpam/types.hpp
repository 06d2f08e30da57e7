#pragma once

/**
 * @file types.hpp
 * @brief Domain value types for the planar pouch-muscle model.
 *
 * All quantities are SI (m, Pa, N, kg, s). Arc naming follows the cross
 * section of one pouch column: arc 1 is the outer pouch wall (bonded to the
 * skin), arc 2 is the skin spanning the gap between columns, arc 3 is the
 * inner pouch wall facing the evacuated void.
 */

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hybridpam/errors.hpp"
#include "hybridpam/units.hpp"

namespace hybridpam {

inline constexpr double kDefaultModulus = 400.0e6;  // Pa
inline constexpr double kDefaultPrestrain = 0.04;

/// Geometry, material and layer parameters of one linear actuator.
struct ActuatorSpec {
    double pouch_length_L10 = 0.0;        // designed pouch length, m
    double gap_length_L20 = 0.0;          // designed skin length between columns, m
    double width_W = 0.0;                 // m
    int columns_n = 1;
    int layers_m = 2;
    double skeleton_thickness_t1 = 0.0;   // m
    double skin_thickness_t2 = 0.0;       // m
    double elastic_modulus_E = kDefaultModulus;
    double prestrain_delta = kDefaultPrestrain;
    std::optional<double> actuator_mass;     // kg
    std::optional<double> flat_volume_Vflat; // m^3

    void validate() const {
        auto require = [](bool ok, const char* what) {
            if (!ok) throw Error(Errc::InvalidArgument, what);
        };
        require(pouch_length_L10 > 0.0, "pouch_length_L10 must be > 0");
        require(gap_length_L20 >= 0.0, "gap_length_L20 must be >= 0");
        require(width_W > 0.0, "width_W must be > 0");
        require(columns_n >= 1, "columns_n must be >= 1");
        require(layers_m >= 1, "layers_m must be >= 1");
        require(skeleton_thickness_t1 > 0.0, "skeleton_thickness_t1 must be > 0");
        require(skin_thickness_t2 > 0.0, "skin_thickness_t2 must be > 0");
        require(elastic_modulus_E > 0.0, "elastic_modulus_E must be > 0");
        require(prestrain_delta >= 0.0, "prestrain_delta must be >= 0");
        if (actuator_mass) require(*actuator_mass > 0.0, "actuator_mass must be > 0");
        if (flat_volume_Vflat) require(*flat_volume_Vflat > 0.0, "flat_volume_Vflat must be > 0");
    }

    /// Stress-free lengths after fabrication slack: (1 + delta) * designed.
    double rest_length_1() const noexcept { return (1.0 + prestrain_delta) * pouch_length_L10; }
    double rest_length_2() const noexcept { return (1.0 + prestrain_delta) * gap_length_L20; }
    double rest_length_3() const noexcept { return rest_length_1(); }

    // Tensile stiffness E t W / L0. Pouch walls use the skeleton sheet,
    // the inter-column arc uses the skin sheet.
    double stiffness_1() const noexcept {
        return elastic_modulus_E * skeleton_thickness_t1 * width_W / rest_length_1();
    }
    double stiffness_2() const noexcept {
        return elastic_modulus_E * skin_thickness_t2 * width_W / rest_length_2();
    }
    double stiffness_3() const noexcept {
        return elastic_modulus_E * skeleton_thickness_t1 * width_W / rest_length_3();
    }

    /// Initial actuator length n*L10 + (n-1)*L20 from the designed lengths.
    double initial_length() const noexcept {
        return columns_n * pouch_length_L10 + (columns_n - 1) * gap_length_L20;
    }

    /// True when L20 <= 2 L10 / pi, i.e. a two-layer skeleton can contract
    /// completely without the top and bottom skin touching.
    bool single_layer_complete_contraction() const noexcept {
        return gap_length_L20 <= 2.0 * pouch_length_L10 / std::numbers::pi;
    }
};

/// The actuator used in the static characterisation experiments.
inline ActuatorSpec reference_actuator() {
    ActuatorSpec s;
    s.pouch_length_L10 = 0.020;
    s.gap_length_L20 = 0.010;
    s.width_W = 0.080;
    s.columns_n = 7;
    s.layers_m = 2;
    s.skeleton_thickness_t1 = 0.09e-3;
    s.skin_thickness_t2 = 0.17e-3;
    s.elastic_modulus_E = kDefaultModulus;
    s.prestrain_delta = kDefaultPrestrain;
    s.actuator_mass = 0.0246;
    return s;
}

struct ConstantPressure {};
struct ClosedChamber {
    double initial_dP1 = 0.0;  // gauge pressure at sealing, Pa
};
using SkeletonRegime = std::variant<ConstantPressure, ClosedChamber>;

/// Applied gauge pressures: dP1 = P1 - P0 >= 0 in the skeleton, dP2 = P2 - P0 <= 0 in the skin void.
struct PressureCondition {
    double positive_gauge_dP1 = 0.0;
    double negative_gauge_dP2 = 0.0;
    SkeletonRegime skeleton_regime = ConstantPressure{};
    double atmospheric_P0 = units::kStandardAtmosphere;

    void validate() const {
        if (!(positive_gauge_dP1 >= 0.0)) throw Error(Errc::InvalidArgument, "dP1 must be >= 0");
        if (!(negative_gauge_dP2 <= 0.0)) throw Error(Errc::InvalidArgument, "dP2 must be <= 0");
        if (!(atmospheric_P0 > 0.0)) throw Error(Errc::InvalidArgument, "P0 must be > 0");
        if (auto* closed = std::get_if<ClosedChamber>(&skeleton_regime)) {
            if (!(closed->initial_dP1 > 0.0)) {
                throw Error(Errc::InvalidArgument, "closed-chamber initial_dP1 must be > 0");
            }
        }
    }

    /// Vacuum magnitude P0 - P2 >= 0.
    double vacuum() const noexcept { return -negative_gauge_dP2; }
    bool closed() const noexcept { return std::holds_alternative<ClosedChamber>(skeleton_regime); }
};

/// Contact regime of the cross-section.
enum class ModelVariant { A, B, C, D };

constexpr char to_char(ModelVariant v) noexcept { return "ABCD"[static_cast<int>(v)]; }

inline ModelVariant variant_from_char(char c) {
    switch (c) {
        case 'A': return ModelVariant::A;
        case 'B': return ModelVariant::B;
        case 'C': return ModelVariant::C;
        case 'D': return ModelVariant::D;
        default: throw Error(Errc::InvalidArgument, std::string("unknown model variant '") + c + "'");
    }
}

/// Skin wraps the pouch below its boundary point (B, D).
constexpr bool has_overlap(ModelVariant v) noexcept {
    return v == ModelVariant::B || v == ModelVariant::D;
}
/// Top and bottom skin touch between columns (C, D).
constexpr bool has_skin_contact(ModelVariant v) noexcept {
    return v == ModelVariant::C || v == ModelVariant::D;
}

/**
 * One solved equilibrium of the cross-section.
 *
 * Arcs are stored by curvature so that a straight segment (zero curvature)
 * is representable; `radius_*()` returns +inf in that case. `arc*` are the
 * free (non-contact) arc lengths used to warm-start the next solve.
 */
struct CrossSectionState {
    ModelVariant variant = ModelVariant::A;
    double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0;
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, theta4 = 0.0;
    double contact_w1 = 0.0, contact_w2 = 0.0;
    double arc1 = 0.0, arc2 = 0.0, arc3 = 0.0;
    double L1 = 0.0, L2 = 0.0, L3 = 0.0;
    double S1 = 0.0, S2 = 0.0, S3 = 0.0;
    double T1 = 0.0, T2 = 0.0, T3 = 0.0;
    double section_height_H = 0.0;
    double sag2 = 0.0;  // depth of the free skin arc below its end points
    double sag3 = 0.0;  // depth of the free inner-wall arc below its end points
    double dP1 = 0.0;   // skeleton gauge pressure this state was solved at
    double dP2 = 0.0;

    static double radius_of(double kappa) noexcept {
        return kappa == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / kappa;
    }
    double radius1() const noexcept { return radius_of(kappa1); }
    double radius2() const noexcept { return radius_of(kappa2); }
    double radius3() const noexcept { return radius_of(kappa3); }
};

struct CurvePoint {
    double theta2 = 0.0;
    double contraction_ratio_CR = 0.0;
    double output_force_F = 0.0;
    double resistance_Fr = 0.0;
    double actuator_length_Ssum = 0.0;
    double skeleton_gauge_dP1 = 0.0;
    CrossSectionState state;
};

struct Curve {
    std::vector<CurvePoint> points;
    ActuatorSpec spec;
    PressureCondition condition;
    double terminal_CR_max = 0.0;
    bool truncated = false;
    std::string truncation_reason;
};

}  // namespace hybridpam
