#include <numbers>

#include "support/test_support.hpp"

using namespace hybridpam;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("arc span", "[geometry]") {
    CHECK(arc_span(1.0, pi / 2) == Approx(2.0));
    CHECK(arc_span(0.010, pi / 6) == Approx(0.010).epsilon(1e-14));
    CHECK(arc_span(0.0, 0.3, 0.02) == 0.02);
    CHECK_THROWS_MATCHES(arc_span(0.0, 0.5), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code() == Errc::NonPositiveRadius;
                         }));
    CHECK_THROWS_AS(arc_span(-1.0, 0.5), Error);

    // Monotone in R and continuous toward the straight chord.
    double prev = 0.0;
    for (double r = 0.001; r < 10.0; r *= 1.7) {
        const double s = arc_span(r, 1.1);
        CHECK(s > prev);
        prev = s;
    }
    const ArcSegment nearly_straight{0.02, 1e-7};
    CHECK(nearly_straight.span() == Approx(0.02).epsilon(1e-12));
}

TEST_CASE("section height", "[geometry]") {
    CHECK(section_height(0.01, pi / 2, 0.005, pi / 3) == Approx(0.015).epsilon(1e-14));
    CHECK(section_height(std::numeric_limits<double>::infinity(), 0.0, std::numeric_limits<double>::infinity(), 0.0) ==
          0.0);

    CrossSectionState c;
    c.variant = ModelVariant::C;
    c.sag2 = 0.004;
    c.sag3 = 0.004;
    CHECK(section_height(c) == 0.0);
}

TEST_CASE("segment area", "[geometry]") {
    CHECK(pouch_segment_area(1.0, pi / 2) == Approx(pi / 2));
    CHECK(pouch_segment_area(1.0, 1e-8) == Approx(0.0).margin(1e-20));
    CHECK(pouch_segment_area(0.5, pi / 3) == Approx(0.25 * (pi / 3 - std::sqrt(3.0) / 4.0)).epsilon(1e-14));
    CHECK(pouch_segment_area(0.5, pi / 3) == Approx(0.1535).epsilon(1e-3));
    CHECK_THROWS_AS(pouch_segment_area(0.0, 1.0), Error);
    for (double t = 0.05; t <= pi / 2; t += 0.05) CHECK(pouch_segment_area(1.0, t) <= pi / 2 + 1e-15);

    // Length form agrees with the radius form.
    const double r = 0.013, t = 0.9;
    CHECK(segment_area(ArcSegment{2.0 * r * t, t}) == Approx(pouch_segment_area(r, t)).epsilon(1e-14));
    CHECK(segment_area(ArcSegment{0.02, 0.0}) == 0.0);
}

TEST_CASE("unit conversions round-trip", "[geometry]") {
    for (double v : {0.09, 0.17, 20.0, 12.345678, 90.0, -60.0}) {
        CHECK(units::m_to_mm(units::mm_to_m(v)) == Approx(v).epsilon(1e-15));
        CHECK(units::pa_to_kpa(units::kpa_to_pa(v)) == Approx(v).epsilon(1e-15));
    }
}

TEST_CASE("spec validation", "[geometry]") {
    ActuatorSpec s = reference_actuator();
    CHECK_NOTHROW(s.validate());
    CHECK(s.initial_length() == Approx(0.200));
    s.width_W = -1.0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = reference_actuator();
    s.prestrain_delta = -0.1;
    CHECK_THROWS_AS(s.validate(), Error);
}
