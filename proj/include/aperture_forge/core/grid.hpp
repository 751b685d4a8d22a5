#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "constants.hpp"

namespace aperture_forge {

struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::string unit;

    double operator[](Eigen::Index i) const { return start + static_cast<double>(i) * step; }
};

// Uniformly sampled 2-D field. Row index runs along axis0, column index along axis1.
template <typename Scalar>
struct Grid {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> data;
    Axis axis0;
    Axis axis1;

    Grid() = default;
    Grid(Eigen::Index n0, Eigen::Index n1, Axis a0, Axis a1)
        : data(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n0, n1)),
          axis0(std::move(a0)), axis1(std::move(a1)) {
        validate();
    }

    Eigen::Index rows() const { return data.rows(); }
    Eigen::Index cols() const { return data.cols(); }

    void validate() const {
        if (!(axis0.step > 0.0) || !(axis1.step > 0.0) || !std::isfinite(axis0.step) ||
            !std::isfinite(axis1.step))
            throw std::invalid_argument("grid axis steps must be positive and finite");
    }

    bool all_finite() const {
        for (Eigen::Index c = 0; c < data.cols(); ++c)
            for (Eigen::Index r = 0; r < data.rows(); ++r)
                if (!std::isfinite(std::abs(data(r, c)))) return false;
        return true;
    }
};

using ComplexGrid = Grid<cplx>;
using RealGrid = Grid<double>;

}  // namespace aperture_forge
