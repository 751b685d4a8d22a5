#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "../core/constants.hpp"
#include "phase_history.hpp"

namespace aperture_forge {

struct SarResolutions {
    double range = 0.0;              // c / 2B
    double cross_range = 0.0;        // lambda R1 / (2 L)
    double doppler = 0.0;            // 2 omega dx / lambda, omega = V / R1
    double aperture_length = 0.0;    // L = V T
    double unfocused_length = 0.0;   // sqrt(R1 lambda)
    std::optional<double> focused_length;  // lambda R1 / D
};

inline SarResolutions sar_resolutions(const SarParams& p, double r1, std::optional<double> antenna_size = {}) {
    p.validate();
    if (!(p.velocity > 0.0)) throw std::invalid_argument("resolution needs a moving platform");
    if (!(r1 > 0.0)) throw std::invalid_argument("reference range must be positive");
    SarResolutions r;
    const double lam = p.wavelength();
    r.range = speed_of_light / (2.0 * std::abs(p.chirp.bandwidth));
    r.aperture_length = p.aperture_length();
    r.cross_range = lam * r1 / (2.0 * r.aperture_length);
    r.doppler = 2.0 * (p.velocity / r1) * r.cross_range / lam;
    r.unfocused_length = std::sqrt(r1 * lam);
    if (antenna_size) {
        if (!(*antenna_size > 0.0)) throw std::invalid_argument("antenna size must be positive");
        r.focused_length = lam * r1 / *antenna_size;
    }
    return r;
}

}  // namespace aperture_forge
