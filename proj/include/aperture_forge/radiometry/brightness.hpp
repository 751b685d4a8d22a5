#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"

namespace aperture_forge {

// Effective area of an isotropic antenna, lambda^2 / (4 pi).
inline double isotropic_effective_area(double wavelength) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
    return wavelength * wavelength / (4.0 * pi);
}

// Power per steradian collected from flux density S (W / (m^2 Hz sr)) by one polarisation.
inline double incident_power(double flux_density, double wavelength, double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return 0.5 * flux_density * isotropic_effective_area(wavelength) * bandwidth;
}

// T_i = P_i / (k B)
inline double brightness_temperature(double power, double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return power / (boltzmann * bandwidth);
}

// Unresolved source: contributes `weight` kelvin to T_m and weight * exp(j 2 pi (u l + v m)) to V.
struct PointSource {
    double theta = 0.0;
    double phi = 0.0;
    double weight = 0.0;
};

// Received brightness T_r(theta, phi) in K/sr on a midpoint grid over theta in [0, theta_max],
// phi in [0, 2 pi). theta_max is pi / 2 (hemisphere) or pi (full sphere).
struct BrightnessMap {
    double theta_max = pi / 2.0;
    Eigen::MatrixXd T;  // rows theta, columns phi
    std::vector<PointSource> points;

    Eigen::Index n_theta() const { return T.rows(); }
    Eigen::Index n_phi() const { return T.cols(); }
    double d_theta() const { return theta_max / static_cast<double>(n_theta()); }
    double d_phi() const { return two_pi / static_cast<double>(n_phi()); }
    double theta(Eigen::Index i) const { return (static_cast<double>(i) + 0.5) * d_theta(); }
    double phi(Eigen::Index k) const { return (static_cast<double>(k) + 0.5) * d_phi(); }

    void validate() const {
        if (T.rows() < 1 || T.cols() < 1) throw std::invalid_argument("brightness grid is empty");
        if (!(theta_max >= pi / 2.0 - 1e-12) || theta_max > pi + 1e-12) throw std::invalid_argument("grid must cover theta in [0, pi/2] and stay within [0, pi]");
        if (!T.allFinite() || (T.array() < 0.0).any()) throw std::invalid_argument("brightness must be finite and nonnegative");
        for (const auto& p : points)
            if (!(p.weight >= 0.0) || !std::isfinite(p.theta) || !std::isfinite(p.phi) || p.theta < 0.0 || p.theta > theta_max)
                throw std::invalid_argument("point source must have nonnegative weight and lie on the grid's theta range");
    }
};

inline BrightnessMap blank_map(Eigen::Index n_theta = 90, Eigen::Index n_phi = 360, double theta_max = pi / 2.0) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("grid dimensions must be positive");
    BrightnessMap m;
    m.theta_max = theta_max;
    m.T = Eigen::MatrixXd::Zero(n_theta, n_phi);
    m.validate();
    return m;
}

inline BrightnessMap uniform_map(double T, Eigen::Index n_theta = 90, Eigen::Index n_phi = 360, double theta_max = pi / 2.0) {
    auto m = blank_map(n_theta, n_phi, theta_max);
    m.T.setConstant(T);
    m.validate();
    return m;
}

// Samples f(l, m) given in direction cosines and stores T_r = f cos(theta), the received brightness
// whose visibility transform is the plain 2-D Fourier transform of f over the unit disc.
inline BrightnessMap map_from_direction_cosines(const std::function<double(double, double)>& f, Eigen::Index n_theta = 90, Eigen::Index n_phi = 360) {
    auto m = blank_map(n_theta, n_phi);
    for (Eigen::Index i = 0; i < n_theta; ++i) {
        const double th = m.theta(i);
        for (Eigen::Index k = 0; k < n_phi; ++k) {
            const double ph = m.phi(k);
            m.T(i, k) = f(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)) * std::cos(th);
        }
    }
    m.validate();
    return m;
}

// T_m = int int T_r sin(theta) dtheta dphi (midpoint rule) plus the point-source weights.
inline double measured_temperature(const BrightnessMap& map) {
    map.validate();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < map.n_theta(); ++i) acc += map.T.row(i).sum() * std::sin(map.theta(i));
    acc *= map.d_theta() * map.d_phi();
    for (const auto& p : map.points) acc += p.weight;
    return acc;
}

}  // namespace aperture_forge
