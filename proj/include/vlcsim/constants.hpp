#pragma once

namespace vlcsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Exact SI speed of light and the free-space wave impedance.
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kEta0 = 376.730313668;         // Ohm

}  // namespace vlcsim
