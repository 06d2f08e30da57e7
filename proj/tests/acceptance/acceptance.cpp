// Acceptance checks: one PASS/FAIL line per primary criterion. Exit status
// is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hybridpam/hybridpam.hpp"
#include "support/oracle.hpp"

namespace fs = std::filesystem;
using namespace hybridpam;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s  %-4s %s [%s; %.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

PressureCondition open_condition(double dP1_kpa, double dP2_kpa) {
    PressureCondition c;
    c.positive_gauge_dP1 = dP1_kpa * 1e3;
    c.negative_gauge_dP2 = dP2_kpa * 1e3;
    return c;
}

PressureCondition closed_condition(double dP1_kpa, double dP2_kpa) {
    PressureCondition c = open_condition(dP1_kpa, dP2_kpa);
    c.skeleton_regime = ClosedChamber{dP1_kpa * 1e3};
    return c;
}

ResistanceModel reference_kr() { return io::load_resistance(std::string(HYBRIDPAM_DATA_DIR) + "/reference_kr.json"); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Printed layer/column table, m = 2..6 by n = 1..5.
constexpr double kPrinted[5][5] = {{36.3, 51.7, 55.3, 56.9, 57.8},
                                   {36.3, 61.1, 65.6, 67.4, 68.5},
                                   {36.3, 67.4, 72.0, 73.8, 74.8},
                                   {36.3, 72.0, 76.4, 78.1, 79.0},
                                   {36.3, 75.4, 79.6, 81.2, 82.1}};

}  // namespace

int main() {
    const ActuatorSpec spec = reference_actuator();
    const double grid_dp1[] = {30.0, 60.0, 90.0};
    const double grid_dp2[] = {-10.0, -40.0, -60.0};

    report("T2", "layer/column table reproduces every printed finite cell to 0.05 pp, < 1 s", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const ContractionTable t = table_II({2, 3, 4, 5, 6}, {1, 2, 3, 4, 5});
        const std::string text = table_text(t);
        const double s = seconds_since(t0);
        int matched = 0;
        double worst_exact = 0.0;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                if (std::abs(std::stod(format_table_cell(t.rows[i], j)) - kPrinted[i][j]) < 0.05) ++matched;
                worst_exact = std::max(worst_exact, std::abs(100.0 * t.rows[i].CR_total[j] - kPrinted[i][j]));
            }
        }
        const bool limit_row = !t.rows.back().layers_m && text.find("->100%") != std::string::npos;
        return Outcome{matched == 25 && limit_row && s < 1.0,
                       fmt("%.0f/25 cells, largest unrounded gap %.3f pp", matched, worst_exact)};
    });

    report("ZZ", "zigzag example (200 mm, 8 edges, 10 mm) gives 74.5 %", [] {
        const double cr = zigzag_max_contraction(0.200, 8, 0.010);
        return Outcome{format_percent(cr) == "74.5", fmt("%.4f %%", 100 * cr)};
    });

    report("PM", "pouch-motor limit L20 = 1e-9 m gives 36.34 % within 0.01 pp", [&] {
        const ContractionSplit s = max_contraction_split({spec.layers_m, spec.columns_n, spec.pouch_length_L10, 1e-9});
        return Outcome{std::abs(100 * s.CR_total - 36.34) < 0.01, fmt("%.5f %%", 100 * s.CR_total)};
    });

    report("TC", "reference actuator at +90/-60 kPa ends at 38..48 % contraction, < 5 s", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const Curve c = trace_curve(spec, open_condition(90, -60), reference_kr());
        const double s = seconds_since(t0);
        const double cr = c.terminal_CR_max;
        return Outcome{!c.truncated && cr >= 0.38 && cr <= 0.48 && s < 5.0,
                       fmt("terminal CR %.2f %%, %.0f points", 100 * cr, static_cast<double>(c.points.size()))};
    });

    report("BF", "blocked force at +90/0 kPa within 30 % of 236.9 N", [&] {
        const double f = blocked_force(spec, open_condition(90, 0)).F;
        return Outcome{std::abs(f - 236.9) <= 0.30 * 236.9, fmt("%.1f N (%+.1f %%)", f, 100 * (f / 236.9 - 1))};
    });

    report("MO", "monotonicity suite on {30,60,90} x {-10,-40,-60} kPa, < 60 s", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const ResistanceModel kr = reference_kr();
        std::vector<std::string> broken;
        double open_force[3][3], closed_force[3][3], closed_dp1[3][3], terminal[3][3];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (const bool sealed : {false, true}) {
                    const PressureCondition cond =
                        sealed ? closed_condition(grid_dp1[i], grid_dp2[j]) : open_condition(grid_dp1[i], grid_dp2[j]);
                    const Curve c = sealed ? trace_curve_closed(spec, cond.positive_gauge_dP1,
                                                                cond.negative_gauge_dP2, kr)
                                           : trace_curve(spec, cond, kr);
                    for (std::size_t k = 1; k < c.points.size(); ++k) {
                        if (c.points[k].output_force_F > c.points[k - 1].output_force_F + 1e-6) {
                            broken.push_back(fmt("F rises along %g/%g", grid_dp1[i], grid_dp2[j]));
                            break;
                        }
                    }
                    if (c.truncated) broken.push_back(fmt("curve %g/%g truncated", grid_dp1[i], grid_dp2[j]));
                    if (sealed) {
                        closed_force[i][j] = c.points.front().output_force_F;
                        closed_dp1[i][j] = c.points.front().skeleton_gauge_dP1;
                    } else {
                        open_force[i][j] = c.points.front().output_force_F;
                        terminal[i][j] = c.terminal_CR_max;
                    }
                }
            }
        }
        for (int j = 0; j < 3; ++j) {
            for (int i = 1; i < 3; ++i) {
                if (!(open_force[i][j] > open_force[i - 1][j])) broken.push_back("blocked force vs dP1");
            }
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 1; j < 3; ++j) {
                if (!(open_force[i][j] <= open_force[i][j - 1])) broken.push_back("open blocked force vs |dP2|");
                if (!(closed_force[i][j] >= closed_force[i][j - 1])) broken.push_back("closed blocked force vs |dP2|");
                if (!(closed_dp1[i][j] >= closed_dp1[i][j - 1])) broken.push_back("closed dP1 vs |dP2|");
                if (!(terminal[i][j] > terminal[i][j - 1])) broken.push_back("terminal CR vs |dP2|");
            }
        }
        const double s = seconds_since(t0);
        std::string detail = broken.empty() ? "18 curves, all properties hold" : broken.front();
        return Outcome{broken.empty() && s < 60.0, detail};
    });

    report("OR", "Newton blocked states match the bisection oracle to 1e-6 on the 3x3 grid", [&] {
        double worst = 0.0;
        bool regimes_agree = true;
        for (double dp1 : grid_dp1) {
            for (double dp2 : grid_dp2) {
                oracle::Params p = oracle::params(spec, dp1 * 1e3, -dp2 * 1e3, false);
                auto ref = oracle::blocked(p);
                const auto sag = [](double r, double t) { return r * (1.0 - std::cos(t)); };
                if (!ref || sag(ref->R2, ref->theta2) > sag(ref->R3, ref->theta3)) {
                    p = oracle::params(spec, dp1 * 1e3, -dp2 * 1e3, true);
                    ref = oracle::blocked(p);
                }
                if (!ref) return Outcome{false, fmt("oracle found no state at %g/%g", dp1, dp2)};
                const BlockedForce b = blocked_force(spec, open_condition(dp1, dp2));
                regimes_agree = regimes_agree && has_skin_contact(b.state.variant) == p.skin_contact;
                worst = std::max({worst, rel(b.state.theta1, ref->theta1), rel(b.state.theta3, ref->theta3),
                                  rel(b.state.contact_w1, ref->w1), rel(b.F, oracle::force(p, *ref))});
            }
        }
        return Outcome{regimes_agree && worst < 1e-6, fmt("max relative gap %.2e", worst)};
    });

    report("CC", "cut-I and cut-II totals agree to 1e-6 over a 5x5 grid of open-void states", [&] {
        const ResistanceModel kr = reference_kr();
        double worst = 0.0;
        int states = 0;
        for (double dp1 : {30.0, 45.0, 60.0, 75.0, 90.0}) {
            for (double dp2 : {0.0, -5.0, -10.0, -15.0, -20.0}) {
                const PressureCondition cond = open_condition(dp1, dp2);
                for (const auto& pt : trace_curve(spec, cond, kr).points) {
                    if (pt.state.variant != ModelVariant::A) continue;
                    const ForceDecomposition d = force_decomposition(spec, cond, pt.state, kr);
                    worst = std::max(worst, rel(d.cut_I_total(), d.cut_II_total()));
                    ++states;
                }
            }
        }
        return Outcome{states > 0 && worst < 1e-6, fmt("%.0f states, max relative gap %.2e", states, worst)};
    });

    report("ME", "metric anchors: 33.6 kJ/m^3, 0.107 kN/(kg kPa), 4.905 %", [&] {
        ActuatorSpec s = spec;
        s.flat_volume_Vflat = 0.200 * 0.070 * 0.70e-3;
        ConditionMeta lift;
        lift.load_mass = 1.0;
        const MetricsReport work =
            compute_metrics(s, lift, TimeSeries({0.0, 1.0}, {{channel::load_height_h, {0.0, 0.03357}}}));
        ConditionMeta blocked;
        blocked.output_force_F = 236.9;
        blocked.pressure_dP = 90e3;
        const MetricsReport ratio = compute_metrics(s, blocked, TimeSeries({0.0, 1.0}, {}));
        std::vector<double> t, q, p, h;
        for (int i = 0; i <= 100; ++i) {
            t.push_back(0.01 * i);
            q.push_back(1e-4);
            p.push_back(100e3);
            h.push_back(0.0005 * i);
        }
        const EfficiencyResult e = energy_efficiency(TimeSeries(t, {{channel::flow_q, q}, {channel::pressure_dP, p}}),
                                                     1.0, TimeSeries(t, {{channel::load_height_h, h}}));
        const double wd = *work.work_density / 1e3;
        const double sfw = *ratio.specific_force_to_weight;
        const double eta = 100 * e.eta_total;
        return Outcome{std::abs(wd - 33.6) <= 0.1 && std::abs(sfw - 0.107) <= 0.001 && std::abs(eta - 4.905) <= 0.001,
                       fmt("%.3f kJ/m^3, %.4f, %.4f %%", wd, sfw, eta)};
    });

    report("MD", "150 operation modes, 6 studied, every code round-trips", [] {
        const auto all = enumerate_modes();
        std::set<std::string> codes;
        int studied = 0;
        bool round_trip = true;
        for (const auto& m : all) {
            codes.insert(m.code);
            studied += m.functional_class == FunctionalClass::Studied;
            const OperationMode back = parse_code(m.code);
            round_trip = round_trip && back == m && render_code(back) == m.code;
        }
        return Outcome{all.size() == 150 && codes.size() == 150 && studied == 6 && round_trip,
                       fmt("%.0f modes, %.0f studied", static_cast<double>(all.size()), studied)};
    });

    report("DT", "sweep output is byte-identical between serial and parallel runs", [&] {
        const fs::path base = fs::temp_directory_path() / "hybridpam_acceptance_sweep";
        fs::remove_all(base);
        const std::string data = HYBRIDPAM_DATA_DIR;
        const std::string args = std::string(HYBRIDPAM_CLI) + " sweep " + data + "/reference_spec.json" +
                                 " --dp1-list 30,60,90 --dp2-list -10,-40,-60 --kr-file " + data +
                                 "/reference_kr.json";
        const int a = std::system((args + " --jobs 1 --out " + (base / "serial").string() + " > /dev/null").c_str());
        const int b = std::system((args + " --jobs 4 --out " + (base / "parallel").string() + " > /dev/null").c_str());
        if (a != 0 || b != 0) return Outcome{false, "sweep exited with an error"};
        int files = 0;
        for (const auto& e : fs::directory_iterator(base / "serial")) {
            if (slurp(e.path()) != slurp(base / "parallel" / e.path().filename())) {
                return Outcome{false, "differs: " + e.path().filename().string()};
            }
            ++files;
        }
        fs::remove_all(base);
        return Outcome{files == 20, fmt("%.0f files compared", files)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
