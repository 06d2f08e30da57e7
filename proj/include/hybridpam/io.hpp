#pragma once

/**
 * @file io.hpp
 * @brief File formats. Files use mm, kPa, kg and N; everything is converted
 *        to SI on load and back on output.
 *
 * Actuator JSON (keys are the ActuatorSpec field names):
 *   pouch_length_L10, gap_length_L20, width_W, skeleton_thickness_t1,
 *   skin_thickness_t2 [mm]; columns_n, layers_m [count];
 *   elastic_modulus_E [kPa]; prestrain_delta [-]; actuator_mass [kg];
 *   flat_volume_Vflat [mm^3]. E, delta, layers_m, mass and Vflat are optional.
 *
 * Condition JSON:
 *   positive_gauge_dP1, negative_gauge_dP2, atmospheric_P0 [kPa];
 *   skeleton_regime: "ConstantPressure" | {"ClosedChamber": {"initial_dP1": kPa}}
 *
 * Resistance JSON:
 *   {"samples": [{"dP1_kPa": 30, "kr_N_per_m": 86.3}, ...]}
 */

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hybridpam/characterization.hpp"
#include "hybridpam/errors.hpp"
#include "hybridpam/resistance.hpp"
#include "hybridpam/types.hpp"
#include "hybridpam/units.hpp"

#ifndef HYBRIDPAM_VERSION
#define HYBRIDPAM_VERSION "0.0.0"
#endif

namespace hybridpam::io {

using nlohmann::json;

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::Schema, origin + ": " + e.what());
    }
}

namespace detail {

inline void reject_unknown_keys(const json& j, const std::vector<std::string>& known, const std::string& what) {
    if (!j.is_object()) throw Error(Errc::Schema, what + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const auto& k : known) ok = ok || k == key;
        if (!ok) throw Error(Errc::Schema, what + ": unknown key '" + key + "'");
    }
}

inline double number(const json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key)) throw Error(Errc::Schema, what + ": missing key '" + key + "'");
    if (!j.at(key).is_number()) throw Error(Errc::Schema, what + ": key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

inline int integer(const json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key)) throw Error(Errc::Schema, what + ": missing key '" + key + "'");
    if (!j.at(key).is_number_integer()) throw Error(Errc::Schema, what + ": key '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

}  // namespace detail

inline ActuatorSpec spec_from_json(const json& j) {
    const std::string what = "actuator spec";
    detail::reject_unknown_keys(j,
                                {"pouch_length_L10", "gap_length_L20", "width_W", "columns_n", "layers_m",
                                 "skeleton_thickness_t1", "skin_thickness_t2", "elastic_modulus_E",
                                 "prestrain_delta", "actuator_mass", "flat_volume_Vflat"},
                                what);
    ActuatorSpec s;
    s.pouch_length_L10 = units::mm_to_m(detail::number(j, "pouch_length_L10", what));
    s.gap_length_L20 = units::mm_to_m(detail::number(j, "gap_length_L20", what));
    s.width_W = units::mm_to_m(detail::number(j, "width_W", what));
    s.columns_n = detail::integer(j, "columns_n", what);
    if (j.contains("layers_m")) s.layers_m = detail::integer(j, "layers_m", what);
    s.skeleton_thickness_t1 = units::mm_to_m(detail::number(j, "skeleton_thickness_t1", what));
    s.skin_thickness_t2 = units::mm_to_m(detail::number(j, "skin_thickness_t2", what));
    if (j.contains("elastic_modulus_E")) s.elastic_modulus_E = units::kpa_to_pa(detail::number(j, "elastic_modulus_E", what));
    if (j.contains("prestrain_delta")) s.prestrain_delta = detail::number(j, "prestrain_delta", what);
    if (j.contains("actuator_mass")) s.actuator_mass = detail::number(j, "actuator_mass", what);
    if (j.contains("flat_volume_Vflat")) s.flat_volume_Vflat = units::mm3_to_m3(detail::number(j, "flat_volume_Vflat", what));
    try {
        s.validate();
    } catch (const Error& e) {
        throw Error(Errc::Schema, what + ": " + e.what());
    }
    return s;
}

inline json spec_to_json(const ActuatorSpec& s) {
    json j;
    j["pouch_length_L10"] = units::m_to_mm(s.pouch_length_L10);
    j["gap_length_L20"] = units::m_to_mm(s.gap_length_L20);
    j["width_W"] = units::m_to_mm(s.width_W);
    j["columns_n"] = s.columns_n;
    j["layers_m"] = s.layers_m;
    j["skeleton_thickness_t1"] = units::m_to_mm(s.skeleton_thickness_t1);
    j["skin_thickness_t2"] = units::m_to_mm(s.skin_thickness_t2);
    j["elastic_modulus_E"] = units::pa_to_kpa(s.elastic_modulus_E);
    j["prestrain_delta"] = s.prestrain_delta;
    if (s.actuator_mass) j["actuator_mass"] = *s.actuator_mass;
    if (s.flat_volume_Vflat) j["flat_volume_Vflat"] = units::m3_to_mm3(*s.flat_volume_Vflat);
    return j;
}

inline PressureCondition condition_from_json(const json& j) {
    const std::string what = "pressure condition";
    detail::reject_unknown_keys(j, {"positive_gauge_dP1", "negative_gauge_dP2", "skeleton_regime", "atmospheric_P0"},
                                what);
    PressureCondition c;
    c.positive_gauge_dP1 = units::kpa_to_pa(detail::number(j, "positive_gauge_dP1", what));
    c.negative_gauge_dP2 = units::kpa_to_pa(detail::number(j, "negative_gauge_dP2", what));
    if (j.contains("atmospheric_P0")) c.atmospheric_P0 = units::kpa_to_pa(detail::number(j, "atmospheric_P0", what));
    if (j.contains("skeleton_regime")) {
        const json& r = j.at("skeleton_regime");
        if (r.is_string() && r.get<std::string>() == "ConstantPressure") {
            c.skeleton_regime = ConstantPressure{};
        } else if (r.is_object() && r.size() == 1 && r.contains("ClosedChamber")) {
            const json& cc = r.at("ClosedChamber");
            detail::reject_unknown_keys(cc, {"initial_dP1"}, what + " ClosedChamber");
            c.skeleton_regime = ClosedChamber{units::kpa_to_pa(detail::number(cc, "initial_dP1", what))};
        } else {
            throw Error(Errc::Schema,
                        what + ": skeleton_regime must be \"ConstantPressure\" or {\"ClosedChamber\": {...}}");
        }
    }
    try {
        c.validate();
    } catch (const Error& e) {
        throw Error(Errc::Schema, what + ": " + e.what());
    }
    return c;
}

inline ResistanceModel resistance_from_json(const json& j) {
    const std::string what = "resistance model";
    detail::reject_unknown_keys(j, {"samples"}, what);
    if (!j.contains("samples") || !j.at("samples").is_array()) {
        throw Error(Errc::Schema, what + ": 'samples' must be an array");
    }
    std::vector<ResistanceSample> samples;
    std::size_t index = 0;
    for (const json& s : j.at("samples")) {
        const std::string where = what + " sample " + std::to_string(index++);
        detail::reject_unknown_keys(s, {"dP1_kPa", "kr_N_per_m"}, where);
        samples.push_back({units::kpa_to_pa(detail::number(s, "dP1_kPa", where)), detail::number(s, "kr_N_per_m", where)});
    }
    if (samples.empty()) return ResistanceModel::none();
    try {
        return build_resistance_model(std::move(samples));
    } catch (const Error& e) {
        throw Error(Errc::Schema, what + ": " + e.what());
    }
}

inline json resistance_to_json(const ResistanceModel& m) {
    json samples = json::array();
    for (const auto& s : m.samples()) samples.push_back({{"dP1_kPa", units::pa_to_kpa(s.dP1)}, {"kr_N_per_m", s.kr}});
    return json{{"samples", samples}};
}

inline ActuatorSpec load_spec(const std::string& path) { return spec_from_json(parse_json(read_text(path), path)); }
inline PressureCondition load_condition(const std::string& path) {
    return condition_from_json(parse_json(read_text(path), path));
}
inline ResistanceModel load_resistance(const std::string& path) {
    return resistance_from_json(parse_json(read_text(path), path));
}

/// A parsed numeric CSV: header names and rows of doubles. Lines starting
/// with '#' and blank lines are skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        return header.size();
    }
    bool has(const std::string& name) const { return column(name) < header.size(); }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace detail

/// Parses CSV text; schema errors carry the 1-based line and column.
inline CsvTable parse_csv(const std::string& text, const std::string& origin) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cells = detail::split_csv_line(line);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        if (cells.size() != t.header.size()) {
            throw Error(Errc::Schema, origin + ": line " + std::to_string(line_no) + ": expected " +
                                          std::to_string(t.header.size()) + " columns, found " +
                                          std::to_string(cells.size()));
        }
        std::vector<double> row;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cells[c], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cells[c].size() || !std::isfinite(v)) {
                throw Error(Errc::Schema, origin + ": line " + std::to_string(line_no) + ", column " +
                                              std::to_string(c + 1) + " ('" + t.header[c] + "'): not a number: '" +
                                              cells[c] + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw Error(Errc::Schema, origin + ": missing header row");
    return t;
}

inline void require_columns(const CsvTable& t, const std::vector<std::string>& allowed,
                            const std::vector<std::string>& required, const std::string& origin) {
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == t.header[c];
        if (!ok) {
            throw Error(Errc::Schema, origin + ": column " + std::to_string(c + 1) + ": unknown column '" +
                                          t.header[c] + "'");
        }
    }
    for (const auto& r : required) {
        if (!t.has(r)) throw Error(Errc::Schema, origin + ": missing required column '" + r + "'");
    }
}

/// Compression test data `d_mm,F_N`.
inline std::vector<DisplacementForce> measurements_from_csv(const std::string& text, const std::string& origin) {
    const CsvTable t = parse_csv(text, origin);
    require_columns(t, {"d_mm", "F_N"}, {"d_mm", "F_N"}, origin);
    const std::size_t d = t.column("d_mm");
    const std::size_t f = t.column("F_N");
    std::vector<DisplacementForce> out;
    for (const auto& row : t.rows) out.push_back({units::mm_to_m(row[d]), row[f]});
    return out;
}

/// Test log `t_s[,x_mm][,h_mm][,q_m3s][,dP_kPa][,F_N]`.
inline TimeSeries time_series_from_csv(const std::string& text, const std::string& origin) {
    const CsvTable t = parse_csv(text, origin);
    require_columns(t, {"t_s", "x_mm", "h_mm", "q_m3s", "dP_kPa", "F_N"}, {"t_s"}, origin);
    if (t.rows.empty()) throw Error(Errc::EmptyTrace, origin + ": no data rows");
    struct Map {
        const char* column;
        const char* channel;
        double scale;
    };
    const Map maps[] = {{"x_mm", channel::displacement_x, 1e-3},
                        {"h_mm", channel::load_height_h, 1e-3},
                        {"q_m3s", channel::flow_q, 1.0},
                        {"dP_kPa", channel::pressure_dP, 1e3},
                        {"F_N", channel::force_F, 1.0}};
    std::vector<double> time;
    const std::size_t tc = t.column("t_s");
    for (const auto& row : t.rows) time.push_back(row[tc]);
    std::map<std::string, std::vector<double>> channels;
    for (const auto& m : maps) {
        if (!t.has(m.column)) continue;
        const std::size_t c = t.column(m.column);
        auto& v = channels[m.channel];
        for (const auto& row : t.rows) v.push_back(row[c] * m.scale);
    }
    return TimeSeries(std::move(time), std::move(channels));
}

inline std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline constexpr const char* kCurveHeader =
    "theta2_rad,variant,CR,F_N,Fr_N,dP1_Pa,dP2_Pa,R1_m,R2_m,R3_m,theta1,theta3,theta4,w1_m,w2_m,H_m";

/// Curve CSV. Infinite radii are written as "inf". A truncated curve ends
/// with a "# truncated=true" comment.
inline std::string curve_csv(const Curve& c) {
    std::ostringstream os;
    os << "# hybridpam " << HYBRIDPAM_VERSION << " curve\n";
    os << kCurveHeader << '\n';
    auto radius = [](double r) { return std::isinf(r) ? std::string("inf") : format_double(r); };
    for (const auto& p : c.points) {
        const auto& s = p.state;
        os << format_double(p.theta2) << ',' << to_char(s.variant) << ',' << format_double(p.contraction_ratio_CR)
           << ',' << format_double(p.output_force_F) << ',' << format_double(p.resistance_Fr) << ','
           << format_double(p.skeleton_gauge_dP1) << ',' << format_double(s.dP2) << ',' << radius(s.radius1())
           << ',' << radius(s.radius2()) << ',' << radius(s.radius3()) << ',' << format_double(s.theta1) << ','
           << format_double(s.theta3) << ',' << format_double(s.theta4) << ',' << format_double(s.contact_w1)
           << ',' << format_double(s.contact_w2) << ',' << format_double(s.section_height_H) << '\n';
    }
    if (c.truncated) os << "# truncated=true reason=" << c.truncation_reason << '\n';
    return os.str();
}

/// Force (N) against contraction (%) as an 800 x 600 SVG with the plotted
/// data repeated in comments.
inline std::string curve_svg(const Curve& c, const std::string& title) {
    constexpr double W = 800, H = 600, left = 80, right = 30, top = 50, bottom = 70;
    double cr_max = 0.0, f_max = 0.0;
    for (const auto& p : c.points) {
        cr_max = std::max(cr_max, 100.0 * p.contraction_ratio_CR);
        f_max = std::max(f_max, p.output_force_F);
    }
    auto nice = [](double v) {
        if (!(v > 0.0)) return 1.0;
        const double e = std::pow(10.0, std::floor(std::log10(v)));
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * e >= v) return m * e;
        }
        return 10.0 * e;
    };
    const double x_top = nice(cr_max);
    const double y_top = nice(f_max);
    auto px = [&](double cr) { return left + (W - left - right) * cr / x_top; };
    auto py = [&](double f) { return H - bottom - (H - top - bottom) * f / y_top; };
    auto num = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.2f", v);
        return std::string(b);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
    os << "<!-- hybridpam " << HYBRIDPAM_VERSION << " -->\n";
    os << "<!-- data: CR_percent,F_N -->\n";
    for (const auto& p : c.points) {
        os << "<!-- " << format_double(100.0 * p.contraction_ratio_CR) << ',' << format_double(p.output_force_F)
           << " -->\n";
    }
    os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    os << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
       << "</text>\n";
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(H - bottom) << "\" x2=\"" << num(W - right) << "\" y2=\""
       << num(H - bottom) << "\"/>\n";
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
       << num(H - bottom) << "\"/>\n";
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_top * i / 5.0;
        const double yv = y_top * i / 5.0;
        os << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(H - bottom + 18) << "\" text-anchor=\"middle\">"
           << num(xv) << "</text>\n";
        os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
           << "</text>\n";
    }
    os << "<text x=\"400\" y=\"" << num(H - 20) << "\" text-anchor=\"middle\">Contraction ratio (%)</text>\n";
    os << "<text x=\"20\" y=\"300\" text-anchor=\"middle\" transform=\"rotate(-90 20 300)\">Force (N)</text>\n";
    os << "</g>\n<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (i) os << ' ';
        os << num(px(100.0 * c.points[i].contraction_ratio_CR)) << ',' << num(py(c.points[i].output_force_F));
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(Errc::InvalidArgument, "write failed for '" + path + "'");
}

}  // namespace hybridpam::io
