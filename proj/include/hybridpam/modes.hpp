#pragma once

/**
 * @file modes.hpp
 * @brief Operation-mode codes: airflow of the inner (skeleton) and outer
 *        (skin) chamber, pressurizing sequence and chamber connectivity.
 *
 * Grammar, one place:
 *
 *   code    := "I" airflow digit "-" "O" airflow digit "-" ("N" | "C")
 *   airflow := "P" | "PC" | "V" | "VC" | "O"
 *              (pressurize, pressurize then close, vacuum, vacuum then close, open)
 *   digits  := "0" "0"  both chambers driven simultaneously
 *            | "1" "2"  inner chamber first
 *            | "2" "1"  outer chamber first
 *   N / C   := chambers not connected / connected
 */

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridpam/errors.hpp"

namespace hybridpam {

enum class Airflow { Pressurize, PressurizeClose, Vacuum, VacuumClose, Open };
enum class Sequence { Simultaneous, InnerFirst, OuterFirst };
enum class Connectivity { NotConnected, Connected };
enum class FunctionalClass { Studied, Untested, NonFunctional };

inline constexpr std::array<Airflow, 5> kAirflows{Airflow::Pressurize, Airflow::PressurizeClose, Airflow::Vacuum,
                                                  Airflow::VacuumClose, Airflow::Open};
inline constexpr std::array<Sequence, 3> kSequences{Sequence::Simultaneous, Sequence::InnerFirst,
                                                    Sequence::OuterFirst};
inline constexpr std::array<Connectivity, 2> kConnectivities{Connectivity::NotConnected, Connectivity::Connected};

inline constexpr std::array<std::string_view, 6> kStudiedModes{"IP1-OO2-N",  "IPC1-OO2-N", "IP1-OV2-N",
                                                              "IPC1-OV2-N", "IP0-OV0-N",  "IP0-OV0-C"};

constexpr std::string_view glyph(Airflow a) noexcept {
    switch (a) {
        case Airflow::Pressurize: return "P";
        case Airflow::PressurizeClose: return "PC";
        case Airflow::Vacuum: return "V";
        case Airflow::VacuumClose: return "VC";
        case Airflow::Open: return "O";
    }
    return "?";
}

constexpr std::string_view describe(Airflow a) noexcept {
    switch (a) {
        case Airflow::Pressurize: return "inflated";
        case Airflow::PressurizeClose: return "inflated then closed";
        case Airflow::Vacuum: return "driven by vacuum";
        case Airflow::VacuumClose: return "evacuated then closed";
        case Airflow::Open: return "open to ambient air";
    }
    return "?";
}

constexpr std::string_view to_string(FunctionalClass c) noexcept {
    switch (c) {
        case FunctionalClass::Studied: return "Studied";
        case FunctionalClass::Untested: return "Untested";
        case FunctionalClass::NonFunctional: return "NonFunctional";
    }
    return "?";
}

inline FunctionalClass functional_class_from_string(std::string_view s) {
    if (s == "Studied") return FunctionalClass::Studied;
    if (s == "Untested") return FunctionalClass::Untested;
    if (s == "NonFunctional") return FunctionalClass::NonFunctional;
    throw Error(Errc::InvalidArgument, "unknown functional class '" + std::string(s) + "'");
}

struct OperationMode {
    Airflow skeleton_airflow = Airflow::Open;  // inner chamber
    Airflow skin_airflow = Airflow::Open;      // outer chamber
    Connectivity connectivity = Connectivity::NotConnected;
    Sequence sequence = Sequence::Simultaneous;
    std::string code;
    FunctionalClass functional_class = FunctionalClass::Untested;

    friend bool operator==(const OperationMode& a, const OperationMode& b) {
        return a.skeleton_airflow == b.skeleton_airflow && a.skin_airflow == b.skin_airflow &&
               a.connectivity == b.connectivity && a.sequence == b.sequence;
    }
};

inline std::string render_code(const OperationMode& m) {
    const char* digits = m.sequence == Sequence::Simultaneous ? "00" : m.sequence == Sequence::InnerFirst ? "12" : "21";
    std::string s = "I";
    s += glyph(m.skeleton_airflow);
    s += digits[0];
    s += "-O";
    s += glyph(m.skin_airflow);
    s += digits[1];
    s += '-';
    s += m.connectivity == Connectivity::Connected ? 'C' : 'N';
    return s;
}

/// The two patterns that cannot act as a muscle: skeleton evacuated while
/// the skin is inflated (an airbag), and both chambers evacuated (flat).
inline FunctionalClass classify_nonfunctional(const OperationMode& m) {
    const std::string code = render_code(m);
    if (std::find(kStudiedModes.begin(), kStudiedModes.end(), code) != kStudiedModes.end()) {
        return FunctionalClass::Studied;
    }
    auto vacuum = [](Airflow a) { return a == Airflow::Vacuum || a == Airflow::VacuumClose; };
    auto pressure = [](Airflow a) { return a == Airflow::Pressurize || a == Airflow::PressurizeClose; };
    if (vacuum(m.skeleton_airflow) && (pressure(m.skin_airflow) || vacuum(m.skin_airflow))) {
        return FunctionalClass::NonFunctional;
    }
    return FunctionalClass::Untested;
}

inline OperationMode make_mode(Airflow skeleton, Airflow skin, Connectivity conn, Sequence seq) {
    OperationMode m;
    m.skeleton_airflow = skeleton;
    m.skin_airflow = skin;
    m.connectivity = conn;
    m.sequence = seq;
    m.code = render_code(m);
    m.functional_class = classify_nonfunctional(m);
    return m;
}

namespace detail {

inline Airflow parse_airflow(std::string_view token, std::string_view whole) {
    for (Airflow a : kAirflows) {
        if (glyph(a) == token) return a;
    }
    throw Error(Errc::MalformedCode,
                "unknown airflow '" + std::string(token) + "' in '" + std::string(whole) + "'");
}

/// Splits "<letter><airflow><digit>" into airflow and sequence digit.
inline std::pair<Airflow, char> parse_chamber(std::string_view token, char letter, std::string_view whole) {
    if (token.size() < 3 || token.front() != letter) {
        throw Error(Errc::MalformedCode, "bad chamber token '" + std::string(token) + "' in '" +
                                             std::string(whole) + "' (expected " + letter + "<airflow><digit>)");
    }
    const char digit = token.back();
    if (digit != '0' && digit != '1' && digit != '2') {
        throw Error(Errc::MalformedCode, "bad sequence digit in '" + std::string(token) + "'");
    }
    return {parse_airflow(token.substr(1, token.size() - 2), whole), digit};
}

}  // namespace detail

inline OperationMode parse_code(std::string_view code) {
    if (code.empty()) throw Error(Errc::MalformedCode, "empty operation code");
    const auto d1 = code.find('-');
    const auto d2 = d1 == std::string_view::npos ? d1 : code.find('-', d1 + 1);
    if (d1 == std::string_view::npos || d2 == std::string_view::npos ||
        code.find('-', d2 + 1) != std::string_view::npos) {
        throw Error(Errc::MalformedCode, "expected three '-'-separated tokens in '" + std::string(code) + "'");
    }
    const auto [inner, si] = detail::parse_chamber(code.substr(0, d1), 'I', code);
    const auto [outer, so] = detail::parse_chamber(code.substr(d1 + 1, d2 - d1 - 1), 'O', code);
    const std::string_view conn = code.substr(d2 + 1);
    if (conn != "N" && conn != "C") {
        throw Error(Errc::MalformedCode, "bad connectivity token '" + std::string(conn) + "'");
    }
    Sequence seq;
    if (si == '0' && so == '0') {
        seq = Sequence::Simultaneous;
    } else if (si == '1' && so == '2') {
        seq = Sequence::InnerFirst;
    } else if (si == '2' && so == '1') {
        seq = Sequence::OuterFirst;
    } else {
        throw Error(Errc::MalformedCode, "inconsistent sequence digits " + std::string(1, si) + "/" +
                                             std::string(1, so) + " in '" + std::string(code) + "'");
    }
    return make_mode(inner, outer, conn == "C" ? Connectivity::Connected : Connectivity::NotConnected, seq);
}

/// All 5 x 5 x 2 x 3 = 150 modes, ordered by code.
inline std::vector<OperationMode> enumerate_modes() {
    std::vector<OperationMode> out;
    out.reserve(150);
    for (Airflow inner : kAirflows)
        for (Airflow outer : kAirflows)
            for (Connectivity c : kConnectivities)
                for (Sequence s : kSequences) out.push_back(make_mode(inner, outer, c, s));
    std::sort(out.begin(), out.end(), [](const OperationMode& a, const OperationMode& b) { return a.code < b.code; });
    return out;
}

/// One-line reading of a code, e.g. "inner inflated first, outer driven by vacuum second, not connected".
inline std::string explain(const OperationMode& m) {
    std::string inner = "inner " + std::string(describe(m.skeleton_airflow));
    std::string outer = "outer " + std::string(describe(m.skin_airflow));
    switch (m.sequence) {
        case Sequence::Simultaneous:
            inner += " simultaneously";
            outer += " simultaneously";
            break;
        case Sequence::InnerFirst:
            inner += " first";
            outer += " second";
            break;
        case Sequence::OuterFirst:
            inner += " second";
            outer += " first";
            break;
    }
    return inner + ", " + outer + ", " +
           (m.connectivity == Connectivity::Connected ? "connected" : "not connected");
}

}  // namespace hybridpam
