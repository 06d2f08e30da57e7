#pragma once

/**
 * @file multilayer.hpp
 * @brief Geometric maximum-contraction predictors for stacked and zigzag
 *        skeletons.
 *
 * With m skeleton layers, each inflated pouch shortens from L10 to its
 * semicircle chord 2 L10 / pi, and the skin between columns can fold
 * completely into the void as long as L20 does not exceed the inflated
 * stack height (m - 1) L10 * 2 / pi.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hybridpam/errors.hpp"

namespace hybridpam {

struct MultilayerSpec {
    int layers_m = 2;
    int columns_n = 1;
    double L10 = 0.0;  // m
    double L20 = 0.0;  // m

    void validate() const {
        if (layers_m < 1 || columns_n < 1) throw Error(Errc::InvalidArgument, "layer and column counts must be >= 1");
        if (!(L10 > 0.0) || !(L20 > 0.0)) throw Error(Errc::InvalidArgument, "L10 and L20 must be > 0");
    }
};

struct ContractionSplit {
    double CR_plus = 0.0;   // positive-pressure share, fraction
    double CR_minus = 0.0;  // vacuum share, fraction
    double CR_total = 0.0;
    bool feasible = true;   // L20 within the folding bound (m - 1) L10 * 2 / pi
};

/// L20 above which the skin cannot fold completely into the void.
inline double folding_bound_L20(int layers_m, double L10) noexcept {
    return (layers_m - 1) * L10 * 2.0 / std::numbers::pi;
}

inline ContractionSplit max_contraction_split(const MultilayerSpec& spec) {
    spec.validate();
    const double n = spec.columns_n;
    const double total = n * spec.L10 + (n - 1.0) * spec.L20;
    ContractionSplit s;
    s.CR_plus = n * (1.0 - 2.0 / std::numbers::pi) * spec.L10 / total;
    s.CR_minus = (n - 1.0) * spec.L20 / total;
    s.CR_total = s.CR_plus + s.CR_minus;
    // Relative slack so the exact bound itself counts as feasible.
    s.feasible = spec.L20 <= folding_bound_L20(spec.layers_m, spec.L10) * (1.0 + 1e-12);
    return s;
}

struct ContractionAtBound {
    double CR_plus_star = 0.0;
    double CR_minus_star = 0.0;
    double total() const noexcept { return CR_plus_star + CR_minus_star; }
};

/// Split at L20 = (m - 1) L10 * 2 / pi, independent of L10.
inline ContractionAtBound max_contraction_at_bound(int layers_m, int columns_n) {
    if (layers_m < 1 || columns_n < 1) throw Error(Errc::InvalidArgument, "layer and column counts must be >= 1");
    const double m = layers_m;
    const double n = columns_n;
    const double pi = std::numbers::pi;
    const double den = pi * n + 2.0 * (m - 1.0) * (n - 1.0);
    return {(pi - 2.0) * n / den, 2.0 * (m - 1.0) * (n - 1.0) / den};
}

/**
 * Zigzag skeleton: (Ssum0 - n L10 * 2 / pi) / Ssum0, where n counts the
 * zigzag edges including the horizontal channel at each end (so a zigzag
 * with 6 slanted edges has n = 8).
 */
inline double zigzag_max_contraction(double Ssum0, int n_edges, double L10) {
    if (!(Ssum0 > 0.0) || n_edges < 1 || !(L10 >= 0.0)) {
        throw Error(Errc::InvalidArgument, "zigzag: need Ssum0 > 0, n_edges >= 1, L10 >= 0");
    }
    const double folded = n_edges * L10 * 2.0 / std::numbers::pi;
    if (folded > Ssum0 * (1.0 + 1e-12)) {
        throw Error(Errc::InfeasibleGeometry, "zigzag: folded edge length exceeds Ssum0");
    }
    return std::max(0.0, (Ssum0 - folded) / Ssum0);
}

/// Row of the layer/column table; `layers_m` empty means the m -> infinity limit.
struct TableRow {
    std::optional<int> layers_m;
    std::vector<double> CR_total;  // one entry per column count
    std::vector<double> CR_plus;   // empty for the limit row
    std::vector<double> CR_minus;
};

struct ContractionTable {
    std::vector<int> columns_n;
    std::vector<TableRow> rows;
};

/// Limit of the bound total as m -> infinity: 1 for n >= 2, (pi - 2) / pi for n = 1.
inline double limit_infinite_layers(int columns_n) noexcept {
    return columns_n >= 2 ? 1.0 : (std::numbers::pi - 2.0) / std::numbers::pi;
}

inline ContractionTable table_II(const std::vector<int>& m_range, const std::vector<int>& n_range,
                                 bool with_infinite_row = true) {
    if (m_range.empty() || n_range.empty()) throw Error(Errc::InvalidArgument, "table ranges must be non-empty");
    ContractionTable t;
    t.columns_n = n_range;
    for (int m : m_range) {
        TableRow row;
        row.layers_m = m;
        for (int n : n_range) {
            const ContractionAtBound b = max_contraction_at_bound(m, n);
            row.CR_total.push_back(b.total());
            row.CR_plus.push_back(b.CR_plus_star);
            row.CR_minus.push_back(b.CR_minus_star);
        }
        t.rows.push_back(std::move(row));
    }
    if (with_infinite_row) {
        TableRow row;
        for (int n : n_range) row.CR_total.push_back(limit_infinite_layers(n));
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Fraction as a percentage with one decimal, halves rounded up ("51.7").
inline std::string format_percent(double fraction) {
    const double tenths = std::floor(fraction * 1000.0 + 0.5 + 1e-9);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", tenths / 10.0);
    return buf;
}

/**
 * Table cell text. The two shares are rounded to 0.01 percentage points
 * first, then their sum is rounded half-up to one decimal. This is how the
 * printed table was produced: it differs from rounding the exact total only
 * at m = 6, n = 5 (82.049 % prints as 82.1).
 */
inline std::string format_table_cell(const TableRow& row, std::size_t i) {
    if (i >= row.CR_plus.size()) return format_percent(row.CR_total[i]);
    const auto hundredths = [](double f) { return static_cast<long long>(std::floor(f * 10000.0 + 0.5 + 1e-9)); };
    const long long sum = hundredths(row.CR_plus[i]) + hundredths(row.CR_minus[i]);
    const long long tenths = (sum + 5) / 10;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%lld", tenths / 10, tenths % 10);
    return buf;
}

/// Comma-separated table: header "m,n=1,...", rows "2,36.3,...", infinite row labelled "inf".
inline std::string table_csv(const ContractionTable& t) {
    std::ostringstream os;
    os << "m";
    for (int n : t.columns_n) os << ",n=" << n;
    os << '\n';
    for (const auto& row : t.rows) {
        os << (row.layers_m ? std::to_string(*row.layers_m) : std::string("inf"));
        for (std::size_t i = 0; i < row.CR_total.size(); ++i) {
            const bool limit = !row.layers_m && t.columns_n[i] >= 2;
            os << ',' << (limit ? std::string("->100.0") : format_table_cell(row, i));
        }
        os << '\n';
    }
    return os.str();
}

/// Aligned text in the layout of the printed table, percentages with a % sign.
inline std::string table_text(const ContractionTable& t) {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-8s", "");
    os << buf;
    for (int n : t.columns_n) {
        std::snprintf(buf, sizeof buf, "%10s", ("n=" + std::to_string(n)).c_str());
        os << buf;
    }
    os << '\n';
    for (const auto& row : t.rows) {
        const std::string label = row.layers_m ? "m=" + std::to_string(*row.layers_m) : std::string("m=+inf");
        std::snprintf(buf, sizeof buf, "%-8s", label.c_str());
        os << buf;
        for (std::size_t i = 0; i < row.CR_total.size(); ++i) {
            const bool limit = !row.layers_m && t.columns_n[i] >= 2;
            const std::string cell = limit ? std::string("->100%") : format_table_cell(row, i) + "%";
            std::snprintf(buf, sizeof buf, "%10s", cell.c_str());
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace hybridpam
