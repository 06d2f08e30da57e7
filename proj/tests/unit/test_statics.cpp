#include <numbers>

#include "support/test_support.hpp"

using namespace hybridpam;
using Catch::Approx;
using testsupport::open_condition;
using testsupport::reference_kr;

namespace {

bool has_code(const std::function<void()>& f, Errc code) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("flat state at zero pressure", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    const CrossSectionState s = solve_equilibrium(spec, open_condition(0, 0), 0.5, ModelVariant::A);
    CHECK(s.kappa1 == 0.0);
    CHECK(s.kappa2 == 0.0);
    CHECK(s.kappa3 == 0.0);
    CHECK(s.T1 == 0.0);
    CHECK(s.T2 == 0.0);
    CHECK(s.T3 == 0.0);
    CHECK(s.S1 == Approx(spec.rest_length_1()));
    CHECK(s.S2 == Approx(spec.rest_length_2()));
    CHECK(section_height(s) == 0.0);
    CHECK(force_at_state(spec, open_condition(0, 0), s, ResistanceModel::none()).F == 0.0);

    const ForceDecomposition d = force_decomposition(spec, open_condition(0, 0), s, ResistanceModel::none());
    CHECK(d.cut_I.tension_2T2 == 0.0);
    CHECK(d.cut_I.push_P0P2HW == 0.0);
    CHECK(d.cut_II.tension_2T1_2T3 == 0.0);
    CHECK(d.cut_II.push_2P1P0H1W == 0.0);
}

TEST_CASE("blocked state satisfies every equation", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    const PressureCondition cond = open_condition(60, -40);
    const CrossSectionState s = blocked_state(spec, cond);
    CHECK(testsupport::max_abs(state_residuals(spec, s)) < 1e-10);
    CHECK(contraction_ratio(spec, s) == Approx(0.0).margin(1e-9));
    // Laplace law on the skin, T2 = (P0 - P2) R2 W.
    CHECK(s.T2 == Approx(cond.vacuum() * s.radius2() * spec.width_W).epsilon(1e-10));
    CHECK(s.S1 == Approx(s.S3).epsilon(1e-10));
    CHECK(s.T1 >= -1e-9);
    CHECK(s.T2 >= -1e-9);
    CHECK(s.T3 >= -1e-9);

    // Re-solving at the same theta2 from the blocked state reproduces it.
    const CrossSectionState again = solve_equilibrium(spec, cond, s.theta2, s.variant, s);
    CHECK(again.theta1 == Approx(s.theta1).epsilon(1e-9));
    CHECK(again.theta3 == Approx(s.theta3).epsilon(1e-9));
    CHECK(again.contact_w1 == Approx(s.contact_w1).epsilon(1e-9));
}

TEST_CASE("solve_equilibrium away from the blocked state", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    const PressureCondition cond = open_condition(90, -60);
    const CrossSectionState b = blocked_state(spec, cond);
    const CrossSectionState s = solve_equilibrium(spec, cond, b.theta2 + 0.3, ModelVariant::A);
    CHECK(s.theta2 == Approx(b.theta2 + 0.3));
    CHECK(testsupport::max_abs(state_residuals(spec, s)) < 1e-10);
    CHECK(contraction_ratio(spec, s) > 0.0);
    CHECK_THROWS_AS(solve_equilibrium(spec, cond, 0.0, ModelVariant::A), Error);
    CHECK_THROWS_AS(solve_equilibrium(spec, cond, std::numbers::pi, ModelVariant::A), Error);
}

TEST_CASE("variant classification", "[statics]") {
    CrossSectionState s;
    s.variant = ModelVariant::A;
    s.theta2 = 0.5;
    s.theta1 = 0.6;
    s.sag2 = 0.001;
    s.sag3 = 0.002;
    CHECK(classify_variant(s) == ModelVariant::A);
    s.theta1 = s.theta2;
    CHECK(classify_variant(s) == ModelVariant::B);
    s.theta1 = 0.6;
    s.sag2 = s.sag3 + 1e-6;
    CHECK(classify_variant(s) == ModelVariant::C);
    s.theta1 = 0.4;
    CHECK(classify_variant(s) == ModelVariant::D);
    s.variant = ModelVariant::B;
    CHECK(classify_variant(s) == ModelVariant::D);
    s.variant = ModelVariant::C;
    CHECK(classify_variant(s) == ModelVariant::D);
    // Never moves backwards.
    s.variant = ModelVariant::D;
    s.theta1 = 1.0;
    s.sag2 = 0.0;
    CHECK(classify_variant(s) == ModelVariant::D);

    // Perturbed solved state: skin lowered 1 um past the inner wall.
    const ActuatorSpec spec = reference_actuator();
    CrossSectionState solved = blocked_state(spec, open_condition(90, -10));
    REQUIRE(solved.variant == ModelVariant::A);
    CHECK(classify_variant(solved) == ModelVariant::A);
    solved.sag2 = solved.sag3 + 1e-6;
    CHECK(classify_variant(solved) == ModelVariant::C);
}

TEST_CASE("output force arithmetic", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    CrossSectionState s;
    s.variant = ModelVariant::C;
    s.T2 = 10.0;
    s.dP1 = 60e3;
    // Fr = kr * (Ssum0 - Ssum): pick a length so Fr = 2 N with kr = 100 N/m.
    const ResistanceModel kr({{60e3, 100.0}});
    const double s0 = spec.initial_length();
    s.S1 = (s0 - 0.02) / spec.columns_n;
    s.S2 = 0.0;
    const ForceResult f = force_at_state(spec, open_condition(60, -40), s, kr);
    CHECK(f.Fr == Approx(2.0));
    CHECK(f.F == Approx(18.0));
}

TEST_CASE("blocked force", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    CHECK(has_code([&] { blocked_force(spec, open_condition(0, 0)); }, Errc::NoBlockedState));

    const BlockedForce b90 = blocked_force(spec, open_condition(90, 0));
    CHECK(b90.F == Approx(236.9).epsilon(0.30));
    CHECK(b90.state.variant == ModelVariant::A);

    const double f30 = blocked_force(spec, open_condition(30, -40)).F;
    const double f60 = blocked_force(spec, open_condition(60, -40)).F;
    const double f90 = blocked_force(spec, open_condition(90, -40)).F;
    CHECK(f30 < f60);
    CHECK(f60 < f90);
    CHECK(blocked_force(spec, open_condition(60, -60)).F <= blocked_force(spec, open_condition(60, -10)).F);
    // Resistance does not enter at zero contraction.
    CHECK(blocked_force(spec, open_condition(60, -40), reference_kr()).F == Approx(f60).epsilon(1e-12));
}

TEST_CASE("force-contraction curves", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    const ResistanceModel kr = reference_kr();

    const Curve c = trace_curve(spec, open_condition(90, -60), kr);
    REQUIRE_FALSE(c.truncated);
    CHECK(c.terminal_CR_max >= 0.38);
    CHECK(c.terminal_CR_max <= 0.48);
    CHECK(c.points.front().contraction_ratio_CR == 0.0);
    CHECK(c.points.front().resistance_Fr == 0.0);
    CHECK(c.points.back().output_force_F == 0.0);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        CHECK(c.points[i].output_force_F <= c.points[i - 1].output_force_F + 1e-6);
        CHECK(c.points[i].contraction_ratio_CR > c.points[i - 1].contraction_ratio_CR);
    }
    for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
        CHECK(testsupport::max_abs(state_residuals(spec, c.points[i].state)) < 1e-9);
    }

    const Curve weak = trace_curve(spec, open_condition(30, -10), kr);
    const Curve strong = trace_curve(spec, open_condition(30, -60), kr);
    CHECK(strong.terminal_CR_max > weak.terminal_CR_max);
    CHECK(strong.points.front().output_force_F < weak.points.front().output_force_F);

    CHECK_THROWS_AS(trace_curve(spec, open_condition(0, 0), kr), Error);
}

TEST_CASE("curve continuity across variant switches", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    for (double dp2 : {-40.0, -60.0}) {
        const Curve c = trace_curve(spec, open_condition(60, dp2), reference_kr());
        const auto& p = c.points;
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            if (p[k].state.variant == p[k - 1].state.variant) continue;
            std::vector<double> steps;
            for (std::size_t j = (k > 5 ? k - 5 : 1); j < std::min(p.size() - 1, k + 6); ++j) {
                if (j != k) steps.push_back(std::abs(p[j].output_force_F - p[j - 1].output_force_F));
            }
            std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
            const double median = steps[steps.size() / 2];
            CHECK(std::abs(p[k].output_force_F - p[k - 1].output_force_F) <= 3.0 * median);
        }
    }
}

TEST_CASE("zero vacuum curve steps in contraction", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    const Curve c = trace_curve(spec, open_condition(60, 0), reference_kr());
    REQUIRE_FALSE(c.truncated);
    CHECK(c.terminal_CR_max > 0.1);
    for (const auto& p : c.points) CHECK(p.state.kappa2 == 0.0);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        CHECK(c.points[i].output_force_F <= c.points[i - 1].output_force_F + 1e-6);
    }
}

TEST_CASE("dual cut force decomposition", "[statics]") {
    const ActuatorSpec spec = reference_actuator();
    const ResistanceModel kr = reference_kr();
    int checked = 0;
    for (double dp1 : {30.0, 45.0, 60.0, 75.0, 90.0}) {
        for (double dp2 : {0.0, -5.0, -10.0, -15.0, -20.0}) {
            const PressureCondition cond = open_condition(dp1, dp2);
            const Curve c = trace_curve(spec, cond, kr);
            for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
                const CurvePoint& p = c.points[i];
                if (p.state.variant != ModelVariant::A) continue;
                const ForceDecomposition d = force_decomposition(spec, cond, p.state, kr);
                CHECK(testsupport::rel(d.cut_I_total(), d.cut_II_total()) < 1e-6);
                // Both cuts give the output force once Fr is removed (the end
                // points carry F and Fr by definition, so only interior ones).
                CHECK(std::abs((d.cut_I_total() - d.Fr) - p.output_force_F) < 1e-6 * d.cut_I_total() + 1e-9);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);

    CrossSectionState contact;
    contact.variant = ModelVariant::C;
    CHECK(has_code([&] { force_decomposition(spec, open_condition(60, -40), contact, kr); },
                   Errc::UnsupportedVariant));

    // Components at a fixed contraction, linearly interpolated along the curve.
    auto at = [&](double dp1, double dp2, double cr) {
        const PressureCondition cond = open_condition(dp1, dp2);
        const Curve c = trace_curve(spec, cond, kr);
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            if (c.points[i].contraction_ratio_CR < cr) continue;
            const auto& a = c.points[i - 1];
            const auto& b = c.points[i];
            REQUIRE(a.state.variant == ModelVariant::A);
            REQUIRE(b.state.variant == ModelVariant::A);
            const double f = (cr - a.contraction_ratio_CR) / (b.contraction_ratio_CR - a.contraction_ratio_CR);
            const ForceDecomposition da = force_decomposition(spec, cond, a.state, kr);
            const ForceDecomposition db = force_decomposition(spec, cond, b.state, kr);
            auto mix = [f](double x, double y) { return x + f * (y - x); };
            ForceDecomposition d;
            d.cut_I.tension_2T2 = mix(da.cut_I.tension_2T2, db.cut_I.tension_2T2);
            d.cut_I.push_P0P2HW = mix(da.cut_I.push_P0P2HW, db.cut_I.push_P0P2HW);
            d.cut_II.tension_2T1_2T3 = mix(da.cut_II.tension_2T1_2T3, db.cut_II.tension_2T1_2T3);
            d.cut_II.push_2P1P0H1W = mix(da.cut_II.push_2P1P0H1W, db.cut_II.push_2P1P0H1W);
            return d;
        }
        FAIL("contraction not reached");
        return ForceDecomposition{};
    };

    // Higher skeleton pressure raises both cut-I terms.
    for (double cr : {0.05, 0.1, 0.2}) {
        const auto p30 = at(30, -20, cr), p60 = at(60, -20, cr), p90 = at(90, -20, cr);
        CHECK(p30.cut_I.tension_2T2 < p60.cut_I.tension_2T2);
        CHECK(p60.cut_I.tension_2T2 < p90.cut_I.tension_2T2);
        CHECK(p30.cut_I.push_P0P2HW < p60.cut_I.push_P0P2HW);
        CHECK(p60.cut_I.push_P0P2HW < p90.cut_I.push_P0P2HW);
    }
    // More vacuum lowers both cut-II terms; the tension drops more than the
    // push at small contraction and less at large contraction.
    const auto lo_small = at(60, -10, 0.05), hi_small = at(60, -40, 0.05);
    const auto lo_large = at(60, -10, 0.2), hi_large = at(60, -40, 0.2);
    for (const auto* pair : {&lo_small, &lo_large}) {
        const auto& hi = pair == &lo_small ? hi_small : hi_large;
        CHECK(hi.cut_II.tension_2T1_2T3 < pair->cut_II.tension_2T1_2T3);
        CHECK(hi.cut_II.push_2P1P0H1W < pair->cut_II.push_2P1P0H1W);
    }
    CHECK(lo_small.cut_II.tension_2T1_2T3 - hi_small.cut_II.tension_2T1_2T3 >
          lo_small.cut_II.push_2P1P0H1W - hi_small.cut_II.push_2P1P0H1W);
    CHECK(lo_large.cut_II.tension_2T1_2T3 - hi_large.cut_II.tension_2T1_2T3 <
          lo_large.cut_II.push_2P1P0H1W - hi_large.cut_II.push_2P1P0H1W);
}
