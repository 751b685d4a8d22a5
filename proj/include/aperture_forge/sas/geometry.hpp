#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "../core/constants.hpp"

namespace aperture_forge {

// Strip-map platform moving along +y at x = 0, height `altitude`, looking toward +x.
// Element offsets are along-track, relative to the platform reference point.
struct SasConfig {
    double speed = 2.0;            // v_p, m/s
    double recording_time = 0.02;  // tau_rec, s (ping repetition period)
    Eigen::Index pings = 32;
    std::vector<double> tx_offsets{0.0};
    std::vector<double> rx_offsets{0.0};
    double sound_speed = speed_of_sound_water;
    double altitude = 0.0;
};

inline double sas_max_range(double recording_time, double sound_speed = speed_of_sound_water) {
    if (!(recording_time > 0.0) || !(sound_speed > 0.0)) throw std::invalid_argument("recording time and sound speed must be positive");
    return 0.5 * sound_speed * recording_time;
}

inline double ping_position(Eigen::Index p, double speed, double recording_time) {
    return static_cast<double>(p) * speed * recording_time;
}

struct SasGeometry {
    SasConfig config;
    std::vector<double> ping_y;   // y_p = p v_p tau_rec
    Eigen::MatrixX3d virtual_el;  // row p * V + v, PCA midpoints of every (tx, rx) pair

    Eigen::Index pings() const { return static_cast<Eigen::Index>(ping_y.size()); }
    Eigen::Index elements() const {
        return static_cast<Eigen::Index>(config.tx_offsets.size() * config.rx_offsets.size());
    }
    Eigen::Vector3d virtual_element(Eigen::Index p, Eigen::Index v) const { return virtual_el.row(p * elements() + v).transpose(); }
    double max_range() const { return sas_max_range(config.recording_time, config.sound_speed); }
    double sound_speed() const { return config.sound_speed; }
};

inline SasGeometry build_geometry(const SasConfig& cfg) {
    if (!(cfg.speed > 0.0) || !(cfg.recording_time > 0.0)) throw std::invalid_argument("platform speed and recording time must be positive");
    if (cfg.pings < 1) throw std::invalid_argument("need at least one ping");
    if (cfg.tx_offsets.empty() || cfg.rx_offsets.empty()) throw std::invalid_argument("need at least one transmitter and one receiver");
    if (!(cfg.sound_speed > 0.0)) throw std::invalid_argument("sound speed must be positive");
    SasGeometry g;
    g.config = cfg;
    const Eigen::Index V = g.elements();
    g.virtual_el.resize(cfg.pings * V, 3);
    for (Eigen::Index p = 0; p < cfg.pings; ++p) {
        const double y = ping_position(p, cfg.speed, cfg.recording_time);
        g.ping_y.push_back(y);
        Eigen::Index v = 0;
        for (double t : cfg.tx_offsets)
            for (double r : cfg.rx_offsets) g.virtual_el.row(p * V + v++) << 0.0, y + 0.5 * (t + r), cfg.altitude;
    }
    return g;
}

// Rectangular imaging grid on the seafloor plane z; node index ix + nx * iy.
struct SasGrid {
    double x0 = 0.0, dx = 0.1;
    Eigen::Index nx = 1;
    double y0 = 0.0, dy = 0.1;
    Eigen::Index ny = 1;
    double z = 0.0;

    Eigen::Index size() const { return nx * ny; }
    Eigen::Index index(Eigen::Index ix, Eigen::Index iy) const { return ix + nx * iy; }
    double x(Eigen::Index ix) const { return x0 + static_cast<double>(ix) * dx; }
    double y(Eigen::Index iy) const { return y0 + static_cast<double>(iy) * dy; }

    Eigen::MatrixX3d points() const {
        if (nx < 1 || ny < 1 || !(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("bad SAS grid");
        Eigen::MatrixX3d P(size(), 3);
        for (Eigen::Index iy = 0; iy < ny; ++iy)
            for (Eigen::Index ix = 0; ix < nx; ++ix) P.row(index(ix, iy)) << x(ix), y(iy), z;
        return P;
    }
};

struct SasScene {
    Eigen::MatrixX3d points;  // N x 3
    Eigen::VectorXcd s;       // scattering amplitudes, gain folded in

    Eigen::Index size() const { return points.rows(); }
    void validate() const {
        if (points.rows() != s.size()) throw std::invalid_argument("scene points and amplitudes differ in length");
        if (!points.allFinite() || !s.allFinite()) throw std::invalid_argument("scene contains non-finite values");
    }
};

// Broadside range of a point from the track line; it must not exceed c tau_rec / 2.
inline void check_within_swath(const SasGeometry& g, const Eigen::MatrixX3d& points) {
    const double rmax = g.max_range();
    for (Eigen::Index n = 0; n < points.rows(); ++n) {
        const double r = std::hypot(points(n, 0), points(n, 2) - g.config.altitude);
        if (r > rmax * (1.0 + 1e-12))
            throw std::invalid_argument("point at broadside range " + std::to_string(r) + " m lies beyond the swath r_max = c tau_rec / 2 = " +
                                        std::to_string(rmax) + " m");
    }
}

}  // namespace aperture_forge
