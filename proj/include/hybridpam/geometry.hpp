#pragma once

// Circular-arc kernels shared by the solvers. Arcs are described by their
// half-angle and either a radius or a length; the length form stays finite
// as curvature goes to zero.

#include <cmath>
#include <limits>

#include "hybridpam/errors.hpp"
#include "hybridpam/types.hpp"

namespace hybridpam {

namespace detail {

/// sin(t)/t, accurate near zero.
inline double sinc(double t) noexcept {
    if (std::abs(t) < 1e-4) return 1.0 - t * t / 6.0;
    return std::sin(t) / t;
}

/// (1 - cos t)/t, accurate near zero.
inline double versc(double t) noexcept {
    if (std::abs(t) < 1e-4) return t / 2.0 - t * t * t / 24.0;
    return (1.0 - std::cos(t)) / t;
}

}  // namespace detail

/// A circular arc with half-angle `half_angle` and arc length `length`.
/// Zero curvature is a straight segment of the same length.
struct ArcSegment {
    double length = 0.0;
    double half_angle = 0.0;

    double curvature() const noexcept { return length > 0.0 ? 2.0 * half_angle / length : 0.0; }
    double radius() const noexcept {
        return half_angle == 0.0 ? std::numeric_limits<double>::infinity()
                                 : length / (2.0 * half_angle);
    }
    /// Chord between the end points, 2 R sin(theta).
    double span() const noexcept { return length * detail::sinc(half_angle); }
    /// Depth of the arc midpoint below the chord, R (1 - cos theta).
    double sagitta() const noexcept { return 0.5 * length * detail::versc(half_angle); }
};

/// Chord of an arc of radius R and half-angle theta: 2 R sin(theta).
inline double arc_span(double radius, double theta) {
    if (!(radius > 0.0)) throw Error(Errc::NonPositiveRadius, "arc_span: radius must be > 0");
    return 2.0 * radius * std::sin(theta);
}

/// Curvature form: zero curvature returns the stored chord length.
inline double arc_span(double curvature, double theta, double chord_if_straight) {
    if (curvature == 0.0) return chord_if_straight;
    if (curvature < 0.0) throw Error(Errc::NonPositiveRadius, "arc_span: negative curvature");
    return arc_span(1.0 / curvature, theta);
}

/// Area between an arc and its chord, R^2 (theta - sin theta cos theta).
inline double pouch_segment_area(double radius, double theta) {
    if (!(radius > 0.0)) {
        throw Error(Errc::NonPositiveRadius, "pouch_segment_area: radius must be > 0");
    }
    return radius * radius * (theta - std::sin(theta) * std::cos(theta));
}

/// Segment area in length form, finite for straight arcs (returns 0).
inline double segment_area(const ArcSegment& arc) noexcept {
    if (arc.half_angle == 0.0 || arc.length == 0.0) return 0.0;
    const double r = arc.radius();
    const double t = arc.half_angle;
    return r * r * (t - std::sin(t) * std::cos(t));
}

/// Height of the void on the centre line between two columns:
/// 2 R3 (1 - cos theta3) - 2 R2 (1 - cos theta2).
inline double section_height(double radius3, double theta3, double radius2, double theta2) noexcept {
    auto sag = [](double r, double t) {
        return std::isinf(r) ? 0.0 : r * (1.0 - std::cos(t));
    };
    return 2.0 * sag(radius3, theta3) - 2.0 * sag(radius2, theta2);
}

/// Void height for a solved state. Zero once the skins touch (C, D).
inline double section_height(const CrossSectionState& state) noexcept {
    if (has_skin_contact(state.variant)) return 0.0;
    return 2.0 * (state.sag3 - state.sag2);
}

/// Cross-section area of one inflated pouch (one layer) as the sum of the
/// outer and inner wall segments, seg(R1, theta1) + seg(R3, theta3). The
/// flat strip w1 where the layers touch is not counted.
inline double pouch_cross_section_area(const CrossSectionState& state) noexcept {
    return segment_area(ArcSegment{state.arc1, state.theta1}) + segment_area(ArcSegment{state.arc3, state.theta3});
}

}  // namespace hybridpam
