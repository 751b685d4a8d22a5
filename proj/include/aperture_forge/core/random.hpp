#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

#include "constants.hpp"

namespace aperture_forge {

using Rng = std::mt19937_64;

// Circular complex Gaussian with E|n|^2 = variance.
inline cplx complex_gaussian(Rng& rng, double variance = 1.0) {
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

inline Eigen::VectorXcd complex_gaussian_vector(Rng& rng, Eigen::Index n, double variance = 1.0) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_gaussian(rng, variance);
    return v;
}

inline Eigen::MatrixXcd complex_gaussian_matrix(Rng& rng, Eigen::Index r, Eigen::Index c,
                                                double variance = 1.0) {
    Eigen::MatrixXcd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index k = 0; k < c; ++k) m(i, k) = complex_gaussian(rng, variance);
    return m;
}

inline cplx random_phasor(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, two_pi);
    return std::polar(1.0, u(rng));
}

}  // namespace aperture_forge
