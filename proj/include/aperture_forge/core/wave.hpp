#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "constants.hpp"
#include "direction.hpp"

namespace aperture_forge {

// Monochromatic wave. `propagation` is the direction the wavefront travels,
// so a wave arriving from direction d has propagation -d.
struct WaveParams {
    double frequency = 1.0;  // Hz
    double phase = 0.0;      // rad
    Direction propagation;
    double speed = speed_of_light;

    double wavelength() const { return speed / frequency; }

    void validate() const {
        if (!(frequency > 0.0) || !std::isfinite(frequency))
            throw std::invalid_argument("wave frequency must be positive");
        if (!(speed > 0.0) || !std::isfinite(speed))
            throw std::invalid_argument("propagation speed must be positive");
    }
};

// Wave vector in cycles per metre.
inline Eigen::Vector3d wave_vector(const WaveParams& w) {
    return w.propagation.unit() / w.wavelength();
}

inline cplx plane_wave_field(const WaveParams& w, const Eigen::Vector3d& x, double t) {
    w.validate();
    const double arg = two_pi * (-wave_vector(w).dot(x) + w.frequency * t) + w.phase;
    return std::polar(1.0, arg);
}

inline cplx spherical_wave_field(const WaveParams& w, const Eigen::Vector3d& source,
                                 const Eigen::Vector3d& x, double t) {
    w.validate();
    const double d = (x - source).norm();
    if (d == 0.0) throw std::domain_error("observation point coincides with the source");
    return std::polar(1.0, -two_pi * d / w.wavelength() + two_pi * w.frequency * t + w.phase);
}

// Fraunhofer distance 2 D^2 / lambda.
inline double far_field_distance(double aperture, double frequency, double speed = speed_of_light) {
    if (!(aperture > 0.0) || !(frequency > 0.0) || !(speed > 0.0))
        throw std::invalid_argument("aperture, frequency and speed must be positive");
    return 2.0 * aperture * aperture * frequency / speed;
}

}  // namespace aperture_forge
