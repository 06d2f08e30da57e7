#pragma once

/**
 * @file characterization.hpp
 * @brief Performance metrics from logged actuator tests.
 *
 * Displacement-based metrics use L_initial, the actuator's initial skeleton
 * length. Power is F dh/dt with F = m_L g (the load is lifted at constant
 * weight). Input energy is the trapezoid integral of q dP.
 */

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hybridpam/errors.hpp"
#include "hybridpam/types.hpp"
#include "hybridpam/units.hpp"

namespace hybridpam {

namespace channel {
inline constexpr const char* displacement_x = "displacement_x";  // m
inline constexpr const char* load_height_h = "load_height_h";    // m
inline constexpr const char* flow_q = "flow_q";                  // m^3/s
inline constexpr const char* pressure_dP = "pressure_dP";        // Pa
inline constexpr const char* force_F = "force_F";                // N
}  // namespace channel

/// Sampled channels on a strictly increasing time base (SI units).
class TimeSeries {
public:
    TimeSeries() = default;

    TimeSeries(std::vector<double> time, std::map<std::string, std::vector<double>> channels)
        : time_(std::move(time)), channels_(std::move(channels)) {
        validate();
    }

    void validate() const {
        if (time_.size() < 2) throw Error(Errc::EmptyTrace, "time series needs at least 2 samples");
        for (std::size_t i = 1; i < time_.size(); ++i) {
            if (!(time_[i] > time_[i - 1])) {
                throw Error(Errc::NonMonotonicTime,
                            "time must be strictly increasing (sample " + std::to_string(i) + ")");
            }
        }
        for (const auto& [name, values] : channels_) {
            if (values.size() != time_.size()) {
                throw Error(Errc::InvalidArgument, "channel '" + name + "' length differs from time");
            }
        }
    }

    const std::vector<double>& time() const noexcept { return time_; }
    bool has(const std::string& name) const { return channels_.count(name) != 0; }
    const std::vector<double>& operator[](const std::string& name) const {
        auto it = channels_.find(name);
        if (it == channels_.end()) throw Error(Errc::InvalidArgument, "missing channel '" + name + "'");
        return it->second;
    }
    const std::map<std::string, std::vector<double>>& channels() const noexcept { return channels_; }
    std::size_t size() const noexcept { return time_.size(); }

    /// Linear interpolation of a channel, clamped to the end values.
    double sample(const std::string& name, double t) const {
        const auto& v = (*this)[name];
        if (t <= time_.front()) return v.front();
        if (t >= time_.back()) return v.back();
        const auto hi = static_cast<std::size_t>(std::upper_bound(time_.begin(), time_.end(), t) - time_.begin());
        const std::size_t lo = hi - 1;
        const double f = (t - time_[lo]) / (time_[hi] - time_[lo]);
        return v[lo] + f * (v[hi] - v[lo]);
    }

private:
    std::vector<double> time_;
    std::map<std::string, std::vector<double>> channels_;
};

struct ConditionMeta {
    std::optional<double> load_mass;        // kg
    std::optional<double> cross_area_A;     // m^2
    std::optional<double> pressure_dP;      // Pa
    std::optional<double> output_force_F;   // N, overrides the force channel
    std::optional<double> initial_length;   // m, overrides the spec's n L10 + (n-1) L20
    bool smooth_rates = false;              // 5-sample moving average before differencing
};

struct MetricsReport {
    std::optional<double> strain;
    std::optional<double> peak_strain_rate;           // 1/s
    std::optional<double> actuation_stress;           // Pa
    std::optional<double> force_to_weight;            // N/kg
    std::optional<double> specific_force_to_weight;   // N/(kg Pa)
    std::optional<double> force_to_volume;            // N/m^3
    std::optional<double> specific_force_to_volume;   // N/(m^3 Pa)
    std::optional<double> peak_power;                 // W
    std::optional<double> peak_power_density;         // W/kg
    std::optional<double> peak_power_to_volume;       // W/m^3
    std::optional<double> specific_work;              // J/kg
    std::optional<double> work_density;               // J/m^3
    std::optional<double> efficiency_eta;
    std::vector<std::pair<double, double>> efficiency_trace;  // (stroke fraction, eta)
};

namespace detail {

/// Centred moving average over `window` samples, shrinking at the ends.
inline std::vector<double> moving_average(const std::vector<double>& v, std::size_t window = 5) {
    std::vector<double> out(v.size());
    const std::size_t half = window / 2;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(v.size() - 1, i + half);
        double s = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) s += v[k];
        out[i] = s / static_cast<double>(hi - lo + 1);
    }
    return out;
}

inline double peak_rate(const std::vector<double>& t, const std::vector<double>& v) {
    double peak = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) peak = std::max(peak, (v[i] - v[i - 1]) / (t[i] - t[i - 1]));
    return peak;
}

inline double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace detail

inline MetricsReport compute_metrics(const ActuatorSpec& spec, const ConditionMeta& meta, const TimeSeries& trace,
                                     double g = units::kStandardGravity) {
    trace.validate();
    MetricsReport r;
    const auto& t = trace.time();
    const double L_initial = meta.initial_length ? *meta.initial_length : spec.initial_length();
    auto smoothed = [&](const std::string& name) {
        return meta.smooth_rates ? detail::moving_average(trace[name]) : trace[name];
    };

    if (trace.has(channel::displacement_x)) {
        const auto& x = trace[channel::displacement_x];
        r.strain = detail::max_of(x) / L_initial;
        r.peak_strain_rate = detail::peak_rate(t, smoothed(channel::displacement_x)) / L_initial;
    }

    std::optional<double> force = meta.output_force_F;
    if (!force && trace.has(channel::force_F)) force = detail::max_of(trace[channel::force_F]);
    if (!force && meta.load_mass) force = *meta.load_mass * g;
    if (force) {
        if (meta.cross_area_A) r.actuation_stress = *force / *meta.cross_area_A;
        if (spec.actuator_mass) {
            r.force_to_weight = *force / *spec.actuator_mass;
            if (meta.pressure_dP) r.specific_force_to_weight = *force / (*spec.actuator_mass * *meta.pressure_dP);
        }
        if (spec.flat_volume_Vflat) {
            r.force_to_volume = *force / *spec.flat_volume_Vflat;
            if (meta.pressure_dP) r.specific_force_to_volume = *force / (*spec.flat_volume_Vflat * *meta.pressure_dP);
        }
    }

    if (trace.has(channel::load_height_h) && meta.load_mass) {
        const double weight = *meta.load_mass * g;
        const auto& h = trace[channel::load_height_h];
        r.peak_power = weight * detail::peak_rate(t, smoothed(channel::load_height_h));
        const double work = weight * detail::max_of(h);
        if (spec.actuator_mass) {
            r.peak_power_density = *r.peak_power / *spec.actuator_mass;
            r.specific_work = work / *spec.actuator_mass;
        }
        if (spec.flat_volume_Vflat) {
            r.peak_power_to_volume = *r.peak_power / *spec.flat_volume_Vflat;
            r.work_density = work / *spec.flat_volume_Vflat;
        }
    }

    if (trace.has(channel::flow_q) && trace.has(channel::pressure_dP) && trace.has(channel::load_height_h) &&
        meta.load_mass) {
        try {
            auto [eta, curve] = [&] {
                const auto& q = trace[channel::flow_q];
                const auto& dp = trace[channel::pressure_dP];
                const auto& h = trace[channel::load_height_h];
                double e_in = 0.0;
                std::vector<double> cumulative(t.size(), 0.0);
                for (std::size_t i = 1; i < t.size(); ++i) {
                    e_in += 0.5 * (q[i] * dp[i] + q[i - 1] * dp[i - 1]) * (t[i] - t[i - 1]);
                    cumulative[i] = e_in;
                }
                if (!(e_in != 0.0)) throw Error(Errc::ZeroInputEnergy, "input energy is zero");
                const double weight = *meta.load_mass * g;
                const double stroke = h.back() - h.front();
                std::vector<std::pair<double, double>> trace_out;
                for (std::size_t i = 1; i < t.size(); ++i) {
                    if (cumulative[i] == 0.0) continue;
                    const double frac = stroke != 0.0 ? (h[i] - h.front()) / stroke : 0.0;
                    trace_out.emplace_back(frac, weight * (h[i] - h.front()) / cumulative[i]);
                }
                return std::pair{weight * (h.back() - h.front()) / e_in, trace_out};
            }();
            r.efficiency_eta = eta;
            r.efficiency_trace = std::move(curve);
        } catch (const Error& e) {
            if (e.code() != Errc::ZeroInputEnergy) throw;
        }
    }
    return r;
}

struct EfficiencyResult {
    double eta_total = 0.0;
    double energy_in = 0.0;   // J
    double energy_out = 0.0;  // J
    std::vector<std::pair<double, double>> eta_vs_stroke;  // (stroke fraction, E_out / E_in)
};

/**
 * Efficiency E_out / E_in with E_in the trapezoid integral of q dP and
 * E_out = m_L g h. The two traces are resampled by linear interpolation to
 * the union of their time grids; h is measured from its first sample.
 */
inline EfficiencyResult energy_efficiency(const TimeSeries& flow_pressure, double load_mass,
                                          const TimeSeries& height, double g = units::kStandardGravity) {
    flow_pressure.validate();
    height.validate();
    if (!(load_mass > 0.0)) throw Error(Errc::InvalidArgument, "load mass must be > 0");
    std::vector<double> grid = flow_pressure.time();
    grid.insert(grid.end(), height.time().begin(), height.time().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const double h0 = height.sample(channel::load_height_h, grid.front());
    const double stroke = height.sample(channel::load_height_h, grid.back()) - h0;
    const double weight = load_mass * g;

    EfficiencyResult out;
    double prev_power = flow_pressure.sample(channel::flow_q, grid.front()) *
                        flow_pressure.sample(channel::pressure_dP, grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double power = flow_pressure.sample(channel::flow_q, grid[i]) *
                             flow_pressure.sample(channel::pressure_dP, grid[i]);
        out.energy_in += 0.5 * (power + prev_power) * (grid[i] - grid[i - 1]);
        prev_power = power;
        const double lift = height.sample(channel::load_height_h, grid[i]) - h0;
        if (out.energy_in != 0.0) {
            out.eta_vs_stroke.emplace_back(stroke != 0.0 ? lift / stroke : 0.0, weight * lift / out.energy_in);
        }
    }
    if (!(out.energy_in != 0.0)) throw Error(Errc::ZeroInputEnergy, "input energy is zero");
    out.energy_out = weight * stroke;
    out.eta_total = out.energy_out / out.energy_in;
    return out;
}

}  // namespace hybridpam
