#pragma once

#include <Eigen/Dense>

#include "geometry.hpp"
#include "model.hpp"

namespace aperture_forge {

// s_cbf = sum over pings and tones of A(p, f)^H d(p, f) = A^H d on the stacked system.
inline Eigen::VectorXcd sas_cbf(const SasData& data, const SensingModel& m) {
    check_dimensions(data, m);
    return m.A.adjoint() * data.d;
}

// |s| arranged as an nx x ny image (row = range index, column = along-track index).
inline Eigen::MatrixXd sas_image(const Eigen::VectorXcd& s, const SasGrid& grid) {
    if (s.size() != grid.size()) throw std::invalid_argument("estimate length does not match the grid");
    Eigen::MatrixXd img(grid.nx, grid.ny);
    for (Eigen::Index iy = 0; iy < grid.ny; ++iy)
        for (Eigen::Index ix = 0; ix < grid.nx; ++ix) img(ix, iy) = std::abs(s(grid.index(ix, iy)));
    return img;
}

}  // namespace aperture_forge
