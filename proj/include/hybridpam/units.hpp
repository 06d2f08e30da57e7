#pragma once

// Boundary unit conversions. Internals are SI throughout; files and CLI
// flags use mm, kPa and N.

namespace hybridpam::units {

inline constexpr double kStandardAtmosphere = 101325.0;  // Pa
inline constexpr double kStandardGravity = 9.81;         // m/s^2

constexpr double mm_to_m(double mm) noexcept { return mm / 1000.0; }
constexpr double m_to_mm(double m) noexcept { return m * 1000.0; }
constexpr double kpa_to_pa(double kpa) noexcept { return kpa * 1000.0; }
constexpr double pa_to_kpa(double pa) noexcept { return pa / 1000.0; }
constexpr double mm2_to_m2(double mm2) noexcept { return mm2 / 1.0e6; }
constexpr double mm3_to_m3(double mm3) noexcept { return mm3 / 1.0e9; }
constexpr double m3_to_mm3(double m3) noexcept { return m3 * 1.0e9; }

}  // namespace hybridpam::units
