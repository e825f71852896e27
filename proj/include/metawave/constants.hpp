#pragma once

namespace metawave {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// speed of light in vacuum, m/s
inline constexpr double c_light = 2.99792458e8;
// Planck constant, J*s
inline constexpr double h_planck = 6.62607015e-34;
inline constexpr double hbar = h_planck / two_pi;
// magnetic flux quantum h/2e, Wb
inline constexpr double flux_quantum = 2.067833848e-15;

// frequency conversions: angular rad/s <-> linear GHz
inline constexpr double ghz_to_rad(double f_ghz) { return two_pi * 1e9 * f_ghz; }
inline constexpr double rad_to_ghz(double omega) { return omega / (two_pi * 1e9); }
inline constexpr double hz_to_rad(double f_hz) { return two_pi * f_hz; }
inline constexpr double rad_to_hz(double omega) { return omega / two_pi; }

// SI prefixes for element values as they appear in configs
inline constexpr double femto = 1e-15;
inline constexpr double pico = 1e-12;
inline constexpr double nano = 1e-9;
inline constexpr double micro = 1e-6;

}  // namespace metawave
