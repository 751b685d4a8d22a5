#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/random.hpp"
#include "../sounding/frequency_grid.hpp"
#include "geometry.hpp"

namespace aperture_forge {

// Stacked sensing matrix: block (p, f) occupies rows ((p F + f) V) .. +V and holds
// a(r_s, p, f)_v = exp(-j (2 pi f / c) 2 |r_s - r_v|).
struct SensingModel {
    Eigen::MatrixXcd A;
    Eigen::Index pings = 0, freqs = 0, elements = 0;
    std::vector<double> frequencies;
    Eigen::MatrixX3d points;

    Eigen::Index rows() const { return A.rows(); }
    Eigen::Index cols() const { return A.cols(); }
    Eigen::Index row(Eigen::Index p, Eigen::Index f, Eigen::Index v) const { return (p * freqs + f) * elements + v; }
    auto block(Eigen::Index p, Eigen::Index f) const { return A.middleRows(row(p, f, 0), elements); }
};

inline constexpr double sas_model_entry_limit = 6e7;

inline SensingModel build_sensing_model(const SasGeometry& g, const Eigen::MatrixX3d& points, const FrequencyGrid& grid) {
    check_within_swath(g, points);
    SensingModel m;
    m.pings = g.pings();
    m.freqs = grid.size();
    m.elements = g.elements();
    m.points = points;
    for (Eigen::Index f = 0; f < m.freqs; ++f) m.frequencies.push_back(grid[f]);
    const Eigen::Index R = m.pings * m.freqs * m.elements, N = points.rows();
    if (static_cast<double>(R) * static_cast<double>(N) > sas_model_entry_limit)
        throw std::invalid_argument("sensing model too large to store; reduce pings, tones, elements or grid");
    m.A.resize(R, N);
    const double c = g.sound_speed();
    for (Eigen::Index p = 0; p < m.pings; ++p)
        for (Eigen::Index v = 0; v < m.elements; ++v) {
            const Eigen::RowVector3d rv = g.virtual_element(p, v).transpose();
            for (Eigen::Index n = 0; n < N; ++n) {
                const double d2 = 2.0 * (points.row(n) - rv).norm();
                for (Eigen::Index f = 0; f < m.freqs; ++f) m.A(m.row(p, f, v), n) = std::polar(1.0, -two_pi * m.frequencies[static_cast<size_t>(f)] / c * d2);
            }
        }
    return m;
}

// Transmit beampattern used only when simulating: omnidirectional, or a uniform line
// aperture of length D along track, B = sinc(D sin(theta) / lambda) with theta off broadside.
struct SasBeam {
    bool omni = true;
    double length = 0.1;  // D, m

    double gain(double sin_theta, double wavelength) const {
        if (omni) return 1.0;
        const double a = pi * length * sin_theta / wavelength;
        return std::abs(a) < 1e-12 ? 1.0 : std::sin(a) / a;
    }
};

// Matched-filtered measurements stacked in the same row order as SensingModel.
struct SasData {
    Eigen::VectorXcd d;
    Eigen::Index pings = 0, freqs = 0, elements = 0;
};

inline SasData simulate_measurements(const SasGeometry& g, const SasScene& scene, const FrequencyGrid& grid, double noise_sigma = 0.0,
                                     std::uint64_t seed = 0, const SasBeam& beam = {}) {
    scene.validate();
    check_within_swath(g, scene.points);
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
    if (!beam.omni && !(beam.length > 0.0)) throw std::invalid_argument("transducer length must be positive");
    SasData out{Eigen::VectorXcd::Zero(g.pings() * grid.size() * g.elements()), g.pings(), grid.size(), g.elements()};
    const double c = g.sound_speed();
    for (Eigen::Index p = 0; p < out.pings; ++p)
        for (Eigen::Index v = 0; v < out.elements; ++v) {
            const Eigen::Vector3d rv = g.virtual_element(p, v);
            for (Eigen::Index n = 0; n < scene.size(); ++n) {
                if (scene.s(n) == cplx{}) continue;
                const Eigen::Vector3d rel = scene.points.row(n).transpose() - rv;
                const double dist = rel.norm();
                for (Eigen::Index f = 0; f < out.freqs; ++f) {
                    const double fr = grid[f];
                    const double b = beam.gain(rel.y() / dist, c / fr);
                    out.d((p * out.freqs + f) * out.elements + v) += scene.s(n) * b * std::polar(1.0, -two_pi * fr / c * 2.0 * dist);
                }
            }
        }
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        for (Eigen::Index r = 0; r < out.d.size(); ++r) out.d(r) += complex_gaussian(rng, noise_sigma * noise_sigma);
    }
    return out;
}

inline void check_dimensions(const SasData& data, const SensingModel& m) {
    if (data.d.size() != m.rows() || data.pings != m.pings || data.freqs != m.freqs || data.elements != m.elements)
        throw std::invalid_argument("measurement stack does not match the sensing model dimensions");
}

}  // namespace aperture_forge
