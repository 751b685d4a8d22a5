#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "../core/grid.hpp"
#include "phase_history.hpp"

namespace aperture_forge {

// Pixel centres x0 + i dx (along track), r0 + k dr (slant range).
struct ImageLattice {
    double x0 = 0.0;
    double dx = 1.0;
    Eigen::Index nx = 1;
    double r0 = 0.0;
    double dr = 1.0;
    Eigen::Index nr = 1;

    double x(Eigen::Index i) const { return x0 + static_cast<double>(i) * dx; }
    double r(Eigen::Index k) const { return r0 + static_cast<double>(k) * dr; }

    void validate() const {
        if (nx < 1 || nr < 1 || !(dx > 0.0) || !(dr > 0.0)) throw std::invalid_argument("bad image lattice");
    }
};

// Lattice matching the raw sampling: one column per pulse position, one row per range bin.
inline ImageLattice native_lattice(const SarParams& p) {
    return {p.platform_x(0), p.along_track_spacing(), p.pulses, p.near_range, p.range_bin(), p.samples};
}

// pixels(i, k): along-track i (axis0), range k (axis1).
struct SarImage {
    ComplexGrid pixels;
    std::string focuser;
};

inline SarImage make_image(const ImageLattice& L, std::string focuser) {
    L.validate();
    return {ComplexGrid(L.nx, L.nr, {L.x0, L.dx, "m"}, {L.r0, L.dr, "m"}), std::move(focuser)};
}

}  // namespace aperture_forge
