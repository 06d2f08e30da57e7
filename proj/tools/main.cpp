// hybridpam command-line front end.
//
// Exit codes: 0 success, 1 solver failure, 2 input or schema error.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hybridpam/hybridpam.hpp"

namespace fs = std::filesystem;
using namespace hybridpam;
using nlohmann::json;

namespace {

constexpr int kExitSolver = 1;
constexpr int kExitInput = 2;

bool is_solver_failure(Errc c) {
    switch (c) {
        case Errc::NoConvergence:
        case Errc::InvalidVariant:
        case Errc::UnsupportedVariant:
        case Errc::NoBlockedState:
        case Errc::VolumeCollapse:
        case Errc::InfeasibleGeometry:
            return true;
        default:
            return false;
    }
}

/// Reads `--config` files written as JSON. Nested objects name subcommands:
/// {"curve": {"dp1": 90, "dp2": -60}}.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string prefix) const override {
        json j = json::object();
        for (const CLI::Option* opt : app->get_options()) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                const auto& res = opt->results();
                j[name] = res.size() == 1 ? json(res[0]) : json(res);
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        (void)prefix;
        return j.dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError("config", e.what());
        }
        std::vector<CLI::ConfigItem> items;
        walk(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void walk(const json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                CLI::ConfigItem open;
                open.parents = parents;
                open.name = "++";
                open.parents.push_back(key);
                out.push_back(open);
                walk(value, next, out);
                CLI::ConfigItem close;
                close.parents = next;
                close.name = "--";
                out.push_back(close);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            out.push_back(item);
        }
    }
};

std::string kpa_label(double kpa) { return io::format_double(kpa); }

std::optional<std::vector<int>> parse_range(const std::string& text) {
    // "2..6" or "1,2,5"
    std::vector<int> out;
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const int a = std::stoi(text.substr(0, dots));
            const int b = std::stoi(text.substr(dots + 2));
            if (b < a) return std::nullopt;
            for (int i = a; i <= b; ++i) out.push_back(i);
        } else {
            std::stringstream ss(text);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (out.empty()) return std::nullopt;
    return out;
}

PressureCondition make_condition(double dp1_kpa, double dp2_kpa, bool closed, std::optional<double> initial_kpa) {
    PressureCondition c;
    c.positive_gauge_dP1 = units::kpa_to_pa(dp1_kpa);
    c.negative_gauge_dP2 = units::kpa_to_pa(dp2_kpa);
    if (closed) {
        const double init = initial_kpa ? *initial_kpa : dp1_kpa;
        c.positive_gauge_dP1 = units::kpa_to_pa(init);
        c.skeleton_regime = ClosedChamber{units::kpa_to_pa(init)};
    }
    c.validate();
    return c;
}

Curve run_curve(const ActuatorSpec& spec, const PressureCondition& cond, const ResistanceModel& kr,
                const SolverSettings& settings, double dead_volume) {
    if (const auto* closed = std::get_if<ClosedChamber>(&cond.skeleton_regime)) {
        return trace_curve_closed(spec, closed->initial_dP1, cond.negative_gauge_dP2, kr, settings, dead_volume,
                                  cond.atmospheric_P0);
    }
    return trace_curve(spec, cond, kr, settings);
}

struct CommonSolve {
    std::string spec_file;
    std::string kr_file;
    double theta2_step = 0.01;
    double cr_step = 0.005;
    bool no_interp = false;
    double dead_volume_mm3 = 0.0;

    void add(CLI::App* cmd) {
        cmd->add_option("spec", spec_file, "Actuator spec JSON (mm, kPa)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--kr-file", kr_file, "Resistance model JSON (kr vs dP1); default kr = 0")
            ->check(CLI::ExistingFile);
        cmd->add_option("--theta2-step", theta2_step, "Continuation step in theta2 [rad]")->capture_default_str();
        cmd->add_option("--cr-step", cr_step, "Continuation step in CR when dP2 = 0")->capture_default_str();
        cmd->add_flag("--no-interp", no_interp, "Keep the first F <= 0 step instead of interpolating F = 0");
        cmd->add_option("--dead-volume", dead_volume_mm3, "Closed skeleton: extra gas volume [mm^3]")
            ->capture_default_str();
    }

    ActuatorSpec spec() const { return io::load_spec(spec_file); }
    ResistanceModel resistance() const { return kr_file.empty() ? ResistanceModel::none() : io::load_resistance(kr_file); }
    SolverSettings settings() const {
        SolverSettings s;
        s.theta2_step = theta2_step;
        s.cr_step = cr_step;
        s.zero_force_interp = !no_interp;
        s.validate();
        return s;
    }
};

void write_curve_files(const Curve& curve, const std::string& prefix, const std::string& title) {
    io::write_text(prefix + ".csv", io::curve_csv(curve));
    io::write_text(prefix + ".svg", io::curve_svg(curve, title));
}

std::string curve_title(const PressureCondition& c) {
    std::ostringstream os;
    os << "dP1 = " << kpa_label(units::pa_to_kpa(c.positive_gauge_dP1)) << " kPa, dP2 = "
       << kpa_label(units::pa_to_kpa(c.negative_gauge_dP2)) << " kPa" << (c.closed() ? " (closed skeleton)" : "");
    return os.str();
}

std::string percent(double fraction, int decimals = 2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, 100.0 * fraction);
    return buf;
}

json metrics_json(const MetricsReport& r) {
    json j = json::object();
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put("strain", r.strain);
    put("peak_strain_rate_per_s", r.peak_strain_rate);
    put("actuation_stress_Pa", r.actuation_stress);
    put("force_to_weight_N_per_kg", r.force_to_weight);
    put("specific_force_to_weight_N_per_kg_Pa", r.specific_force_to_weight);
    put("force_to_volume_N_per_m3", r.force_to_volume);
    put("specific_force_to_volume_N_per_m3_Pa", r.specific_force_to_volume);
    put("peak_power_W", r.peak_power);
    put("peak_power_density_W_per_kg", r.peak_power_density);
    put("peak_power_to_volume_W_per_m3", r.peak_power_to_volume);
    put("specific_work_J_per_kg", r.specific_work);
    put("work_density_J_per_m3", r.work_density);
    put("efficiency_eta", r.efficiency_eta);
    if (!r.efficiency_trace.empty()) {
        json t = json::array();
        for (const auto& [s, e] : r.efficiency_trace) t.push_back({s, e});
        j["efficiency_trace"] = t;
    }
    return j;
}

std::string metrics_text(const MetricsReport& r) {
    std::ostringstream os;
    char buf[128];
    auto line = [&](const char* label, const std::optional<double>& v, double scale, const char* unit) {
        if (!v) return;
        std::snprintf(buf, sizeof buf, "%-34s %14.6g %s\n", label, *v * scale, unit);
        os << buf;
    };
    line("strain", r.strain, 100.0, "%");
    line("peak strain rate", r.peak_strain_rate, 100.0, "%/s");
    line("actuation stress", r.actuation_stress, 1e-6, "MPa");
    line("force-to-weight", r.force_to_weight, 1e-3, "kN/kg");
    line("specific force-to-weight", r.specific_force_to_weight, 1.0, "kN/(kg kPa)");
    line("force-to-volume", r.force_to_volume, 1e-3, "kN/m^3");
    line("specific force-to-volume", r.specific_force_to_volume, 1.0, "kN/(m^3 kPa)");
    line("peak power", r.peak_power, 1e-3, "kW");
    line("peak power density", r.peak_power_density, 1e-3, "kW/kg");
    line("peak power-to-volume", r.peak_power_to_volume, 1e-3, "kW/m^3");
    line("specific work", r.specific_work, 1e-3, "kJ/kg");
    line("work density", r.work_density, 1e-3, "kJ/m^3");
    line("energy efficiency", r.efficiency_eta, 100.0, "%");
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statics, multilayer geometry, metrics and operation modes of hybrid-pressure pouch muscles"};
    app.set_version_flag("--version", std::string("hybridpam ") + HYBRIDPAM_VERSION);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "Read options from a JSON file");
    app.require_subcommand(1);

    // curve
    CommonSolve curve_opts;
    double curve_dp1 = 0.0, curve_dp2 = 0.0;
    bool curve_closed = false;
    std::optional<double> curve_initial;
    std::string curve_out = "curve";
    auto* curve = app.add_subcommand("curve", "Force-contraction curve for one pressure pair");
    curve_opts.add(curve);
    curve->add_option("--dp1", curve_dp1, "Skeleton gauge pressure [kPa, >= 0]")->required();
    curve->add_option("--dp2", curve_dp2, "Skin-void gauge pressure [kPa, <= 0]")->required();
    curve->add_flag("--closed", curve_closed, "Seal the skeleton after inflation");
    curve->add_option("--initial-dp1", curve_initial, "Closed skeleton: gauge pressure at sealing [kPa]");
    curve->add_option("--out", curve_out, "Output prefix; writes <prefix>.csv and <prefix>.svg")->capture_default_str();

    // sweep
    CommonSolve sweep_opts;
    std::vector<double> sweep_dp1, sweep_dp2;
    bool sweep_closed = false;
    std::string sweep_out = "sweep";
    unsigned sweep_jobs = 0;
    auto* sweep = app.add_subcommand("sweep", "Curves over a grid of pressure pairs plus a blocked-force matrix");
    sweep_opts.add(sweep);
    sweep->add_option("--dp1-list", sweep_dp1, "Skeleton pressures [kPa]")->required()->delimiter(',');
    sweep->add_option("--dp2-list", sweep_dp2, "Skin-void pressures [kPa]")->required()->delimiter(',');
    sweep->add_flag("--closed", sweep_closed, "Seal the skeleton after inflation (dp1 is the sealing pressure)");
    sweep->add_option("--out", sweep_out, "Output directory")->capture_default_str();
    sweep->add_option("--jobs", sweep_jobs, "Worker threads (0 = hardware concurrency, 1 = serial)")
        ->capture_default_str();

    // blocked
    CommonSolve blocked_opts;
    double blocked_dp1 = 0.0, blocked_dp2 = 0.0;
    bool blocked_closed = false;
    bool blocked_json = false;
    auto* blocked = app.add_subcommand("blocked", "Blocked force (zero contraction)");
    blocked_opts.add(blocked);
    blocked->add_option("--dp1", blocked_dp1, "Skeleton gauge pressure [kPa]")->required();
    blocked->add_option("--dp2", blocked_dp2, "Skin-void gauge pressure [kPa]")->required();
    blocked->add_flag("--closed", blocked_closed, "Seal the skeleton at dp1 before applying dp2");
    blocked->add_flag("--json", blocked_json, "Print JSON");

    // table
    std::string table_m = "2..6", table_n = "1..5", table_format = "text";
    bool table_no_inf = false;
    auto* table = app.add_subcommand("table", "Maximum contraction of multilayer skeletons at the folding bound");
    table->add_option("--m", table_m, "Layer counts, e.g. 2..6 or 2,4")->capture_default_str();
    table->add_option("--n", table_n, "Column counts, e.g. 1..5")->capture_default_str();
    table->add_option("--format", table_format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    table->add_flag("--no-inf", table_no_inf, "Omit the m -> infinity row");

    // metrics
    std::string metrics_spec, metrics_trace;
    std::optional<double> metrics_load, metrics_area_mm2, metrics_dp, metrics_force, metrics_length_mm;
    bool metrics_smooth = false, metrics_as_json = false;
    auto* metrics = app.add_subcommand("metrics", "Performance metrics from a test log");
    metrics->add_option("spec", metrics_spec, "Actuator spec JSON (mass, Vflat)")->required()->check(CLI::ExistingFile);
    metrics->add_option("--trace", metrics_trace, "CSV with t_s and any of x_mm,h_mm,q_m3s,dP_kPa,F_N")
        ->check(CLI::ExistingFile);
    metrics->add_option("--load-mass", metrics_load, "Lifted load [kg]");
    metrics->add_option("--area", metrics_area_mm2, "Maximum cross-sectional area [mm^2]");
    metrics->add_option("--dp", metrics_dp, "Actuation pressure difference [kPa]");
    metrics->add_option("--force", metrics_force, "Output force [N] (overrides the F_N channel)");
    metrics->add_option("--initial-length", metrics_length_mm, "Initial skeleton length [mm]");
    metrics->add_flag("--smooth", metrics_smooth, "5-sample moving average before rate differencing");
    metrics->add_flag("--json", metrics_as_json, "Print JSON");

    // fit-kr
    std::string fit_spec, fit_out;
    std::vector<std::string> fit_data;
    std::vector<double> fit_dp1;
    double fit_threshold_mm = 9.0;
    auto* fit = app.add_subcommand("fit-kr", "Resistance coefficient from compression tests");
    fit->add_option("spec", fit_spec, "Actuator spec JSON")->required()->check(CLI::ExistingFile);
    fit->add_option("--data", fit_data, "CSV d_mm,F_N (repeat, one per pressure)")->required()->check(CLI::ExistingFile);
    fit->add_option("--dp1", fit_dp1, "Skeleton pressure of each --data file [kPa]")->required();
    fit->add_option("--threshold", fit_threshold_mm, "Linear-region threshold [mm]")->capture_default_str();
    fit->add_option("--out", fit_out, "Write the resistance model JSON here");

    // modes
    bool modes_list = false, modes_as_json = false;
    std::string modes_filter, modes_explain;
    auto* modes = app.add_subcommand("modes", "Operation-mode codes");
    modes->add_flag("--list", modes_list, "List all modes");
    modes->add_option("--filter", modes_filter, "Only modes of this class")
        ->check(CLI::IsMember({"Studied", "Untested", "NonFunctional"}));
    modes->add_option("--explain", modes_explain, "Decode one code");
    modes->add_flag("--json", modes_as_json, "Print JSON");

    for (CLI::App* sub : {curve, sweep, blocked, table, metrics, fit, modes}) sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (curve->parsed()) {
            const ActuatorSpec spec = curve_opts.spec();
            const PressureCondition cond = make_condition(curve_dp1, curve_dp2, curve_closed, curve_initial);
            const Curve c = run_curve(spec, cond, curve_opts.resistance(), curve_opts.settings(),
                                      units::mm3_to_m3(curve_opts.dead_volume_mm3));
            write_curve_files(c, curve_out, curve_title(cond));
            std::cout << "points " << c.points.size() << ", blocked force " << io::format_double(c.points.front().output_force_F)
                      << " N, terminal CR " << percent(c.terminal_CR_max) << " %\n";
            if (c.truncated) {
                std::cerr << "curve truncated: " << c.truncation_reason << '\n';
                return kExitSolver;
            }
            return 0;
        }

        if (sweep->parsed()) {
            const ActuatorSpec spec = sweep_opts.spec();
            const ResistanceModel kr = sweep_opts.resistance();
            const SolverSettings settings = sweep_opts.settings();
            const double dead = units::mm3_to_m3(sweep_opts.dead_volume_mm3);
            fs::create_directories(sweep_out);

            struct Cell {
                double dp1, dp2;
                std::optional<double> blocked;
                std::string error_code, error_message;
            };
            std::vector<Cell> cells;
            for (double a : sweep_dp1)
                for (double b : sweep_dp2) cells.push_back({a, b, std::nullopt, {}, {}});

            auto work = [&](Cell& cell) {
                const std::string stem = "curve_dp1_" + kpa_label(cell.dp1) + "_dp2_" + kpa_label(cell.dp2);
                try {
                    const PressureCondition cond = make_condition(cell.dp1, cell.dp2, sweep_closed, std::nullopt);
                    const Curve c = run_curve(spec, cond, kr, settings, dead);
                    cell.blocked = c.points.front().output_force_F;
                    write_curve_files(c, (fs::path(sweep_out) / stem).string(), curve_title(cond));
                    if (c.truncated) {
                        cell.error_code = "Truncated";
                        cell.error_message = c.truncation_reason;
                    }
                } catch (const Error& e) {
                    cell.error_code = std::string(to_string(e.code()));
                    cell.error_message = e.what();
                }
            };

            unsigned jobs = sweep_jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : sweep_jobs;
            jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cells.size()));
            if (jobs <= 1) {
                for (auto& cell : cells) work(cell);
            } else {
                std::atomic<std::size_t> next{0};
                std::vector<std::thread> pool;
                for (unsigned t = 0; t < jobs; ++t) {
                    pool.emplace_back([&] {
                        for (std::size_t i = next++; i < cells.size(); i = next++) work(cells[i]);
                    });
                }
                for (auto& th : pool) th.join();
            }

            std::ostringstream matrix;
            matrix << "# hybridpam " << HYBRIDPAM_VERSION << " blocked force [N]\n";
            matrix << "dp1_kPa";
            for (double b : sweep_dp2) matrix << ",dp2=" << kpa_label(b);
            matrix << '\n';
            std::size_t k = 0;
            for (double a : sweep_dp1) {
                matrix << kpa_label(a);
                for (std::size_t j = 0; j < sweep_dp2.size(); ++j, ++k) {
                    matrix << ',' << (cells[k].blocked ? io::format_double(*cells[k].blocked) : std::string("nan"));
                }
                matrix << '\n';
            }
            io::write_text((fs::path(sweep_out) / "blocked_force.csv").string(), matrix.str());

            std::ostringstream errors;
            errors << "dp1_kPa,dp2_kPa,code,message\n";
            bool failed = false;
            for (const auto& cell : cells) {
                if (cell.error_code.empty()) continue;
                failed = true;
                std::string msg = cell.error_message;
                for (char& ch : msg) {
                    if (ch == ',' || ch == '\n') ch = ';';
                }
                errors << kpa_label(cell.dp1) << ',' << kpa_label(cell.dp2) << ',' << cell.error_code << ',' << msg
                       << '\n';
            }
            io::write_text((fs::path(sweep_out) / "errors.csv").string(), errors.str());
            std::cout << cells.size() << " cells written to " << sweep_out << (failed ? " (see errors.csv)" : "")
                      << '\n';
            return failed ? kExitSolver : 0;
        }

        if (blocked->parsed()) {
            const ActuatorSpec spec = blocked_opts.spec();
            const PressureCondition cond = make_condition(blocked_dp1, blocked_dp2, blocked_closed, std::nullopt);
            const BlockedForce b = blocked_force(spec, cond, blocked_opts.resistance(), blocked_opts.settings());
            if (blocked_json) {
                json j{{"dP1_kPa", units::pa_to_kpa(b.state.dP1)},
                       {"dP2_kPa", blocked_dp2},
                       {"F_N", b.F},
                       {"variant", std::string(1, to_char(b.state.variant))},
                       {"theta1", b.state.theta1},
                       {"theta2", b.state.theta2},
                       {"theta3", b.state.theta3},
                       {"w1_mm", units::m_to_mm(b.state.contact_w1)}};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "blocked force " << io::format_double(b.F) << " N (model " << to_char(b.state.variant)
                          << ", skeleton gauge " << io::format_double(units::pa_to_kpa(b.state.dP1)) << " kPa)\n";
            }
            return 0;
        }

        if (table->parsed()) {
            const auto ms = parse_range(table_m);
            const auto ns = parse_range(table_n);
            if (!ms || !ns) throw Error(Errc::InvalidArgument, "ranges must look like 2..6 or 1,3,5");
            const ContractionTable t = table_II(*ms, *ns, !table_no_inf);
            std::cout << (table_format == "csv" ? table_csv(t) : table_text(t));
            return 0;
        }

        if (metrics->parsed()) {
            const ActuatorSpec spec = io::load_spec(metrics_spec);
            ConditionMeta meta;
            meta.load_mass = metrics_load;
            if (metrics_area_mm2) meta.cross_area_A = units::mm2_to_m2(*metrics_area_mm2);
            if (metrics_dp) meta.pressure_dP = units::kpa_to_pa(*metrics_dp);
            meta.output_force_F = metrics_force;
            if (metrics_length_mm) meta.initial_length = units::mm_to_m(*metrics_length_mm);
            meta.smooth_rates = metrics_smooth;
            TimeSeries trace;
            if (!metrics_trace.empty()) {
                trace = io::time_series_from_csv(io::read_text(metrics_trace), metrics_trace);
            } else {
                trace = TimeSeries({0.0, 1.0}, {});
            }
            const MetricsReport r = compute_metrics(spec, meta, trace);
            std::cout << (metrics_as_json ? metrics_json(r).dump(2) + "\n" : metrics_text(r));
            return 0;
        }

        if (fit->parsed()) {
            if (fit_data.size() != fit_dp1.size()) {
                throw Error(Errc::InvalidArgument, "give one --dp1 per --data file");
            }
            const ActuatorSpec spec = io::load_spec(fit_spec);
            std::vector<ResistanceSample> samples;
            for (std::size_t i = 0; i < fit_data.size(); ++i) {
                const auto data = io::measurements_from_csv(io::read_text(fit_data[i]), fit_data[i]);
                const KrFit f = fit_kr(data, spec, units::mm_to_m(fit_threshold_mm));
                samples.push_back({units::kpa_to_pa(fit_dp1[i]), f.kr});
                std::cout << "dP1 " << kpa_label(fit_dp1[i]) << " kPa: slope " << io::format_double(f.slope)
                          << " N/m, kr " << io::format_double(f.kr) << " N/m, R^2 " << io::format_double(f.fit_r2)
                          << ", " << f.used_samples << " samples\n";
            }
            const ResistanceModel model = build_resistance_model(std::move(samples));
            const std::string text = io::resistance_to_json(model).dump(2) + "\n";
            if (!fit_out.empty()) {
                io::write_text(fit_out, text);
            } else {
                std::cout << text;
            }
            return 0;
        }

        if (modes->parsed()) {
            if (!modes_explain.empty()) {
                const OperationMode m = parse_code(modes_explain);
                if (modes_as_json) {
                    std::cout << json{{"code", m.code},
                                      {"class", std::string(to_string(m.functional_class))},
                                      {"explanation", explain(m)}}
                                     .dump(2)
                              << '\n';
                } else {
                    std::cout << m.code << ": " << explain(m) << " [" << to_string(m.functional_class) << "]\n";
                }
                return 0;
            }
            std::vector<OperationMode> all = enumerate_modes();
            if (!modes_filter.empty()) {
                const FunctionalClass want = functional_class_from_string(modes_filter);
                std::erase_if(all, [&](const OperationMode& m) { return m.functional_class != want; });
            } else if (!modes_list) {
                std::cout << all.size() << " modes; use --list, --filter <class> or --explain <code>\n";
                return 0;
            }
            if (modes_as_json) {
                json arr = json::array();
                for (const auto& m : all) arr.push_back({{"code", m.code}, {"class", std::string(to_string(m.functional_class))}});
                std::cout << arr.dump(2) << '\n';
            } else {
                for (const auto& m : all) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%-12s %s\n", m.code.c_str(), std::string(to_string(m.functional_class)).c_str());
                    std::cout << buf;
                }
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_solver_failure(e.code()) ? kExitSolver : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
