#pragma once

#include <complex>
#include <numbers>

namespace aperture_forge {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx j{0.0, 1.0};

inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double speed_of_sound_water = 1500.0;  // m/s, nominal
inline constexpr double boltzmann = 1.380649e-23;       // J/K
inline constexpr double hbar = 1.054571817e-34;         // J s

inline double deg2rad(double d) { return d * pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / pi; }

inline double db10(double x) { return 10.0 * std::log10(x); }
inline double db20(double x) { return 20.0 * std::log10(x); }
inline double from_db10(double d) { return std::pow(10.0, d / 10.0); }

}  // namespace aperture_forge
