#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/direction.hpp"
#include "../core/random.hpp"
#include "frequency_grid.hpp"
#include "lattice.hpp"

namespace aperture_forge {

enum class RayKind { plane_wave, point_source };

// Plane wave arriving from `arrival` with delay `delay` at the origin, or a point source at
// `source` whose path adds D_p / c on top of `delay`.
struct ChannelRay {
    RayKind kind = RayKind::plane_wave;
    Direction arrival;
    Eigen::Vector3d source = Eigen::Vector3d::Zero();
    double delay = 0.0;  // s
    cplx amplitude = 1.0;

    static ChannelRay plane(SineSpace uv, double delay, cplx amp = 1.0) {
        ChannelRay r;
        r.arrival = Direction(uv);
        r.delay = delay;
        r.amplitude = amp;
        return r;
    }
    static ChannelRay point(const Eigen::Vector3d& src, double delay, cplx amp = 1.0) {
        ChannelRay r;
        r.kind = RayKind::point_source;
        r.source = src;
        r.delay = delay;
        r.amplitude = amp;
        return r;
    }
};

// s21(p, s): active element p (lattice order) at tone s.
struct SweepData {
    Eigen::MatrixXcd s21;
    SamplingLattice lattice;
    FrequencyGrid grid;

    void validate() const {
        lattice.validate();
        if (s21.rows() != lattice.count() || s21.cols() != grid.size())
            throw std::invalid_argument("sweep dimensions do not match lattice x frequency grid");
        if (!s21.allFinite()) throw std::invalid_argument("sweep contains non-finite values");
    }
};

inline SweepData synthesize_sweep(const std::vector<ChannelRay>& rays, const SamplingLattice& lattice,
                                  const FrequencyGrid& grid, double noise_sigma = 0.0, std::uint64_t seed = 0) {
    lattice.validate();
    const Eigen::Index S = grid.size();
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
    const Eigen::MatrixX3d P = lattice.positions();
    const double T = grid.unambiguous_delay();
    SweepData sw{Eigen::MatrixXcd::Zero(P.rows(), S), lattice, grid};
    for (const auto& ray : rays) {
        if (!(ray.delay >= 0.0) || ray.delay >= T)
            throw std::invalid_argument("ray delay outside [0, 1/df): it would alias in the delay domain");
        Eigen::VectorXd extra(P.rows());  // per-element delay offset, s
        if (ray.kind == RayKind::plane_wave) {
            extra = -(P * ray.arrival.unit()) / speed_of_light;
        } else {
            for (Eigen::Index p = 0; p < P.rows(); ++p)
                extra(p) = (P.row(p).transpose() - ray.source).norm() / speed_of_light;
            if (extra.minCoeff() <= 0.0) throw std::domain_error("point source coincides with a lattice element");
            if (ray.delay + extra.maxCoeff() >= T)
                throw std::invalid_argument("point-source path delay exceeds 1/df and would alias");
        }
        for (Eigen::Index p = 0; p < P.rows(); ++p) {
            const double tau = ray.delay + extra(p);
            for (Eigen::Index s = 0; s < S; ++s) sw.s21(p, s) += ray.amplitude * std::polar(1.0, -two_pi * grid[s] * tau);
        }
    }
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        for (Eigen::Index p = 0; p < P.rows(); ++p)
            for (Eigen::Index s = 0; s < S; ++s) sw.s21(p, s) += complex_gaussian(rng, noise_sigma * noise_sigma);
    }
    return sw;
}

}  // namespace aperture_forge
