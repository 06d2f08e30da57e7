#pragma once

#if defined(HYBRIDPAM_CATCH_AMALGAMATED)
#include <catch_amalgamated.hpp>
#else
#include <catch2/catch_all.hpp>
#endif

#include <algorithm>
#include <cmath>

#include "hybridpam/hybridpam.hpp"

namespace testsupport {

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

/// Resistance calibration used for the reference actuator in the tests.
inline hybridpam::ResistanceModel reference_kr() {
    return hybridpam::ResistanceModel({{30e3, 86.3}, {60e3, 172.7}, {90e3, 259.0}});
}

inline hybridpam::PressureCondition open_condition(double dP1_kpa, double dP2_kpa) {
    hybridpam::PressureCondition c;
    c.positive_gauge_dP1 = dP1_kpa * 1e3;
    c.negative_gauge_dP2 = dP2_kpa * 1e3;
    return c;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace testsupport
