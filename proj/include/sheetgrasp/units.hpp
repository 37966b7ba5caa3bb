#pragma once

#include <numbers>

// All internal quantities are SI (meters, radians, newtons, pascals).
// Millimeters and degrees appear only at file and CLI boundaries.

namespace sheetgrasp {

inline constexpr double kGravity = 9.81;  // m/s^2

constexpr double mm_to_m(double mm) { return mm * 1e-3; }
constexpr double m_to_mm(double m) { return m * 1e3; }
constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace sheetgrasp
