#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "../core/random.hpp"

namespace aperture_forge {

// Multiplicative speckle with unit mean and variance sigma_mu^2 (Gamma, shape 1/sigma^2).
inline Eigen::MatrixXd apply_speckle(const Eigen::MatrixXd& intensity, double sigma_mu, std::uint64_t seed) {
    if (!(sigma_mu >= 0.0)) throw std::invalid_argument("speckle sigma must be non-negative");
    if ((intensity.array() < 0.0).any()) throw std::invalid_argument("intensity must be non-negative");
    if (sigma_mu == 0.0) return intensity;
    Rng rng(seed);
    std::gamma_distribution<double> g(1.0 / (sigma_mu * sigma_mu), sigma_mu * sigma_mu);
    Eigen::MatrixXd out(intensity.rows(), intensity.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) = intensity(r, c) * g(rng);
    return out;
}

// Lee filter Zhat + g (Z - Zhat), g = var / (Zhat^2 sigma_mu^2 + var), local statistics
// over a window x window neighbourhood with replicated borders.
inline Eigen::MatrixXd lee_filter(const Eigen::MatrixXd& Z, int window, double sigma_mu) {
    if (window < 3 || window % 2 == 0) throw std::invalid_argument("window must be odd and at least 3");
    if (sigma_mu < 0.0) throw std::invalid_argument("speckle sigma must be non-negative");
    const Eigen::Index R = Z.rows(), C = Z.cols(), h = window / 2;
    Eigen::MatrixXd out(R, C);
    for (Eigen::Index r = 0; r < R; ++r)
        for (Eigen::Index c = 0; c < C; ++c) {
            double s = 0.0, s2 = 0.0;
            for (Eigen::Index a = -h; a <= h; ++a)
                for (Eigen::Index b = -h; b <= h; ++b) {
                    const double v = Z(std::clamp<Eigen::Index>(r + a, 0, R - 1), std::clamp<Eigen::Index>(c + b, 0, C - 1));
                    s += v;
                    s2 += v * v;
                }
            const double n = static_cast<double>(window * window);
            const double mean = s / n;
            const double var = std::max(0.0, s2 / n - mean * mean);
            const double den = mean * mean * sigma_mu * sigma_mu + var;
            const double gain = den > 0.0 ? var / den : 1.0;
            out(r, c) = mean + gain * (Z(r, c) - mean);
        }
    return out;
}

}  // namespace aperture_forge
