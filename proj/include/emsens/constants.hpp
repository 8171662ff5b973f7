#pragma once

namespace emsens {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kC0 = 299792458.0;            // m/s
inline constexpr double kEps0 = 8.8541878128e-12;     // F/m
inline constexpr double kMu0 = 4.0 * kPi * 1.0e-7;    // H/m

}  // namespace emsens
