#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "constants.hpp"

namespace aperture_forge {

struct Index2 {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    bool operator==(const Index2&) const = default;
};

// Ties go to the lowest row-major linear index.
template <typename Derived>
Index2 argmax_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) throw std::invalid_argument("argmax of an empty matrix");
    Index2 best;
    double bv = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double v = std::abs(m(r, c));
            if (v > bv) {
                bv = v;
                best = {r, c};
            }
        }
    return best;
}

template <typename Derived>
Eigen::Index argmax_abs_vec(const Eigen::MatrixBase<Derived>& v) {
    if (v.size() == 0) throw std::invalid_argument("argmax of an empty vector");
    Eigen::Index best = 0;
    double bv = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > bv) {
            bv = std::abs(v(i));
            best = i;
        }
    return best;
}

// Width of the lobe around `peak` where the power profile stays above `level` x peak power.
// Crossings are linearly interpolated. Returns width in samples.
inline double lobe_width(const Eigen::VectorXd& power, Eigen::Index peak, double level = 0.5) {
    const double thr = level * power(peak);
    const Eigen::Index n = power.size();
    Eigen::Index r = peak;
    while (r + 1 < n && power(r + 1) >= thr) ++r;
    Eigen::Index l = peak;
    while (l > 0 && power(l - 1) >= thr) --l;
    if (r + 1 >= n || l == 0) throw std::runtime_error("lobe runs into the profile edge");
    const double xr = r + (power(r) - thr) / (power(r) - power(r + 1));
    const double xl = l - (power(l) - thr) / (power(l) - power(l - 1));
    return xr - xl;
}

// Mean distance from the peak to the first minimum on each side, refined by a parabola.
inline double peak_to_first_null(const Eigen::VectorXd& mag, Eigen::Index peak) {
    const Eigen::Index n = mag.size();
    auto refine = [&](Eigen::Index i) {
        if (i <= 0 || i >= n - 1) return static_cast<double>(i);
        const double a = mag(i - 1), b = mag(i), c = mag(i + 1);
        const double den = a - 2.0 * b + c;
        return den > 0.0 ? i + 0.5 * (a - c) / den : static_cast<double>(i);
    };
    Eigen::Index r = peak;
    while (r + 1 < n && mag(r + 1) < mag(r)) ++r;
    Eigen::Index l = peak;
    while (l > 0 && mag(l - 1) < mag(l)) --l;
    if (r == n - 1 || l == 0) throw std::runtime_error("no null inside the profile");
    return 0.5 * ((refine(r) - peak) + (peak - refine(l)));
}

// Pearson correlation of two equally sized real arrays.
inline double correlation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0)
        throw std::invalid_argument("size mismatch");
    const Eigen::ArrayXd dx = a.reshaped().array() - a.mean();
    const Eigen::ArrayXd dy = b.reshaped().array() - b.mean();
    const double den = std::sqrt((dx * dx).sum() * (dy * dy).sum());
    return den > 0.0 ? (dx * dy).sum() / den : 0.0;
}

}  // namespace aperture_forge
