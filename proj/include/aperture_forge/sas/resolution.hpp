#pragma once

#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

struct SasResolution {
    double range = 0.0;        // delta_x = c / (2 df)
    double cross_range = 0.0;  // delta_y = lambda r0 / (2 L_SA)
    double sa_length = 0.0;    // L_SA = lambda r0 / D
};

inline SasResolution sas_resolutions(double bandwidth, double transducer, double wavelength, double r0,
                                     double sound_speed = speed_of_sound_water) {
    if (!(bandwidth > 0.0) || !(transducer > 0.0) || !(wavelength > 0.0) || !(r0 > 0.0) || !(sound_speed > 0.0))
        throw std::invalid_argument("SAS resolution inputs must be positive");
    SasResolution r;
    r.range = sound_speed / (2.0 * bandwidth);
    r.sa_length = wavelength * r0 / transducer;
    r.cross_range = wavelength * r0 / (2.0 * r.sa_length);
    return r;
}

}  // namespace aperture_forge
