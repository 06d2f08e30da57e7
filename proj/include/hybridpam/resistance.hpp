#pragma once

/**
 * @file resistance.hpp
 * @brief Contraction resistance: kr(dP1) model and its fit from
 *        compressive-resistance measurements.
 *
 * The parasitic force opposing contraction is Fr = kr(dP1) * (Ssum0 - Ssum).
 * kr is obtained by fitting a line to the linear (large displacement) part
 * of a force/displacement compression test, scaling its slope by the total
 * gap length (n-1) L20 to get Fr_max, and dividing by the geometric maximum
 * contraction n (1 - 2/pi) L10 + (n-1) L20.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "hybridpam/errors.hpp"
#include "hybridpam/types.hpp"

namespace hybridpam {

struct ResistanceSample {
    double dP1 = 0.0;  // Pa
    double kr = 0.0;   // N/m
};

/// Piecewise-linear kr(dP1) with constant extrapolation. An empty model is kr == 0.
class ResistanceModel {
public:
    ResistanceModel() = default;

    explicit ResistanceModel(std::vector<ResistanceSample> samples) : samples_(std::move(samples)) {
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (!(samples_[i].kr >= 0.0)) {
                throw Error(Errc::InvalidArgument, "resistance coefficient kr must be >= 0");
            }
            if (i > 0 && !(samples_[i].dP1 > samples_[i - 1].dP1)) {
                throw Error(Errc::InvalidArgument, "resistance samples must have strictly increasing dP1");
            }
        }
    }

    /// kr == 0 everywhere.
    static ResistanceModel none() { return {}; }

    /// kr at skeleton gauge pressure dP1.
    double kr(double dP1) const noexcept {
        if (samples_.empty()) return 0.0;
        if (dP1 <= samples_.front().dP1) return samples_.front().kr;
        if (dP1 >= samples_.back().dP1) return samples_.back().kr;
        auto hi = std::upper_bound(samples_.begin(), samples_.end(), dP1,
                                   [](double p, const ResistanceSample& s) { return p < s.dP1; });
        auto lo = hi - 1;
        const double f = (dP1 - lo->dP1) / (hi->dP1 - lo->dP1);
        return lo->kr + f * (hi->kr - lo->kr);
    }

    const std::vector<ResistanceSample>& samples() const noexcept { return samples_; }
    bool empty() const noexcept { return samples_.empty(); }

private:
    std::vector<ResistanceSample> samples_;
};

struct DisplacementForce {
    double displacement = 0.0;  // m
    double force = 0.0;         // N
};

struct KrFit {
    double kr = 0.0;        // N/m
    double slope = 0.0;     // N/m
    double intercept = 0.0; // N
    double fit_r2 = 0.0;
    double rss = 0.0;       // residual sum of squares, N^2
    std::size_t used_samples = 0;
};

/// Geometric maximum contraction n (1 - 2/pi) L10 + (n-1) L20 (designed lengths).
inline double max_contraction_length(const ActuatorSpec& spec) noexcept {
    const double n = spec.columns_n;
    return n * (1.0 - 2.0 / std::numbers::pi) * spec.pouch_length_L10 + (n - 1.0) * spec.gap_length_L20;
}

/// Ordinary least squares on samples with displacement above `linear_threshold`.
inline KrFit fit_kr(std::span<const DisplacementForce> measurements, const ActuatorSpec& spec,
                    double linear_threshold = 0.009) {
    for (std::size_t i = 1; i < measurements.size(); ++i) {
        if (!(measurements[i].displacement > measurements[i - 1].displacement)) {
            throw Error(Errc::InvalidArgument, "fit_kr: displacements must be strictly increasing");
        }
    }
    std::vector<DisplacementForce> used;
    for (const auto& m : measurements) {
        if (m.displacement > linear_threshold) used.push_back(m);
    }
    if (used.size() < 2) {
        throw Error(Errc::InsufficientData, "fit_kr: need at least 2 samples above the linear threshold");
    }

    const double count = static_cast<double>(used.size());
    double mean_d = 0.0, mean_f = 0.0;
    for (const auto& m : used) {
        mean_d += m.displacement;
        mean_f += m.force;
    }
    mean_d /= count;
    mean_f /= count;
    double sdd = 0.0, sdf = 0.0, sff = 0.0;
    for (const auto& m : used) {
        const double dd = m.displacement - mean_d;
        const double df = m.force - mean_f;
        sdd += dd * dd;
        sdf += dd * df;
        sff += df * df;
    }
    if (!(sdd > 0.0)) throw Error(Errc::DegenerateFit, "fit_kr: zero displacement variance");

    KrFit fit;
    fit.slope = sdf / sdd;
    fit.intercept = mean_f - fit.slope * mean_d;
    for (const auto& m : used) {
        const double r = m.force - (fit.intercept + fit.slope * m.displacement);
        fit.rss += r * r;
    }
    fit.fit_r2 = sff > 0.0 ? 1.0 - fit.rss / sff : 1.0;
    fit.used_samples = used.size();

    const double fr_max = fit.slope * (spec.columns_n - 1) * spec.gap_length_L20;
    fit.kr = fr_max / max_contraction_length(spec);
    return fit;
}

/// Sorts fits by pressure and builds the interpolating model.
inline ResistanceModel build_resistance_model(std::vector<ResistanceSample> fits) {
    if (fits.empty()) throw Error(Errc::InsufficientData, "build_resistance_model: no fits given");
    std::sort(fits.begin(), fits.end(),
              [](const ResistanceSample& a, const ResistanceSample& b) { return a.dP1 < b.dP1; });
    for (std::size_t i = 1; i < fits.size(); ++i) {
        if (fits[i].dP1 == fits[i - 1].dP1) {
            throw Error(Errc::DuplicatePressure, "build_resistance_model: two fits at the same dP1");
        }
    }
    return ResistanceModel(std::move(fits));
}

}  // namespace hybridpam
