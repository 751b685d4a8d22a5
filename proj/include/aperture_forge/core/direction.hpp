#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "constants.hpp"

namespace aperture_forge {

// theta from +z (boresight), phi from +x toward +y.
struct Spherical {
    double theta = 0.0;
    double phi = 0.0;
};

// Direction cosines toward x and y.
struct SineSpace {
    double u = 0.0;
    double v = 0.0;
};

// Azimuth in the x-z plane from boresight, elevation toward +y.
struct AzEl {
    double az = 0.0;
    double el = 0.0;
};

inline constexpr double direction_eps = 1e-12;

class Direction {
public:
    Direction() = default;

    explicit Direction(Spherical s) {
        if (!std::isfinite(s.theta) || !std::isfinite(s.phi))
            throw std::invalid_argument("non-finite direction angle");
        if (s.theta < -direction_eps || s.theta > pi + direction_eps)
            throw std::domain_error("theta outside [0, pi]");
        theta_ = std::clamp(s.theta, 0.0, pi);
        phi_ = s.phi;
    }

    explicit Direction(SineSpace s) {
        const double r2 = s.u * s.u + s.v * s.v;
        if (!std::isfinite(r2)) throw std::invalid_argument("non-finite direction cosine");
        if (r2 > 1.0 + direction_eps) throw std::domain_error("u^2 + v^2 > 1 is outside visible space");
        theta_ = std::asin(std::sqrt(std::min(r2, 1.0)));
        phi_ = (r2 == 0.0) ? 0.0 : std::atan2(s.v, s.u);
    }

    explicit Direction(AzEl a) {
        if (!std::isfinite(a.az) || !std::isfinite(a.el))
            throw std::invalid_argument("non-finite az/el");
        const double u = std::cos(a.el) * std::sin(a.az);
        const double v = std::sin(a.el);
        const double w = std::cos(a.el) * std::cos(a.az);
        theta_ = std::acos(std::clamp(w, -1.0, 1.0));
        phi_ = (u == 0.0 && v == 0.0) ? 0.0 : std::atan2(v, u);
    }

    Spherical spherical() const { return {theta_, phi_}; }

    SineSpace sine_space() const {
        const double st = std::sin(theta_);
        return {st * std::cos(phi_), st * std::sin(phi_)};
    }

    // tan(AZ) = u / w with w = cos(theta); the argument is kept away from the pole.
    AzEl az_el() const {
        const auto [u, v] = sine_space();
        const double w = std::cos(theta_);
        const double el = std::asin(std::clamp(v, -1.0, 1.0));
        double az = 0.0;
        if (std::abs(u) > direction_eps || std::abs(w) > direction_eps)
            az = std::atan2(u, std::abs(w) < direction_eps ? std::copysign(direction_eps, w) : w);
        return {az, el};
    }

    // Unit vector (u, v, cos theta).
    Eigen::Vector3d unit() const {
        const auto [u, v] = sine_space();
        return {u, v, std::cos(theta_)};
    }

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

template <typename Target>
Target convert_direction(const Direction& d) {
    if constexpr (std::is_same_v<Target, Spherical>)
        return d.spherical();
    else if constexpr (std::is_same_v<Target, SineSpace>)
        return d.sine_space();
    else if constexpr (std::is_same_v<Target, AzEl>)
        return d.az_el();
    else
        static_assert(sizeof(Target) == 0, "unsupported coordinate system");
}

}  // namespace aperture_forge
