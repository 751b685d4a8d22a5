#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"

namespace aperture_forge {

// Rectangular nx x ny positioner lattice in the plane z, centred on the origin, with an
// active mask for thinned apertures. Lattice index p = ix + nx * iy.
struct SamplingLattice {
    Eigen::Index nx = 1;
    Eigen::Index ny = 1;
    double dx = 1.0;
    double dy = 1.0;
    double z = 0.0;
    std::vector<bool> active;  // empty = all active

    double x(Eigen::Index ix) const { return (static_cast<double>(ix) - 0.5 * static_cast<double>(nx - 1)) * dx; }
    double y(Eigen::Index iy) const { return (static_cast<double>(iy) - 0.5 * static_cast<double>(ny - 1)) * dy; }
    Eigen::Index total() const { return nx * ny; }
    bool is_active(Eigen::Index p) const { return active.empty() || active[static_cast<size_t>(p)]; }
    bool full() const { return std::all_of(active.begin(), active.end(), [](bool b) { return b; }); }

    std::vector<Eigen::Index> active_indices() const {
        std::vector<Eigen::Index> out;
        for (Eigen::Index p = 0; p < total(); ++p)
            if (is_active(p)) out.push_back(p);
        return out;
    }
    Eigen::Index count() const { return static_cast<Eigen::Index>(active_indices().size()); }

    // Active element positions, one row each.
    Eigen::MatrixX3d positions() const {
        const auto idx = active_indices();
        Eigen::MatrixX3d P(static_cast<Eigen::Index>(idx.size()), 3);
        for (size_t i = 0; i < idx.size(); ++i) {
            const Eigen::Index p = idx[i];
            P.row(static_cast<Eigen::Index>(i)) << x(p % nx), y(p / nx), z;
        }
        return P;
    }

    void validate() const {
        if (nx < 1 || ny < 1 || !(dx > 0.0) || !(dy > 0.0) || !std::isfinite(z))
            throw std::invalid_argument("bad lattice geometry");
        if (!active.empty() && static_cast<Eigen::Index>(active.size()) != total())
            throw std::invalid_argument("active mask size does not match the lattice");
        if (count() == 0) throw std::invalid_argument("lattice has no active elements");
    }
};

inline SamplingLattice planar_lattice(Eigen::Index nx, Eigen::Index ny, double dx, double dy, double z = 0.0) {
    SamplingLattice L{nx, ny, dx, dy, z, {}};
    L.validate();
    return L;
}

// Largest distance from an active element to its nearest active neighbour.
inline double max_nearest_neighbor_spacing(const SamplingLattice& L) {
    const Eigen::MatrixX3d P = L.positions();
    if (P.rows() < 2) return 0.0;
    double worst = 0.0;
    for (Eigen::Index a = 0; a < P.rows(); ++a) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index b = 0; b < P.rows(); ++b)
            if (a != b) best = std::min(best, (P.row(a) - P.row(b)).squaredNorm());
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

// True when spacing exceeds lambda_min / 2 (grating lobes possible). Not an error.
inline bool lattice_may_alias(const SamplingLattice& L, double f_max) {
    const double half = 0.5 * speed_of_light / f_max;
    const double tol = 1e-12 * half;
    if (L.full()) return (L.nx > 1 && L.dx > half + tol) || (L.ny > 1 && L.dy > half + tol);
    return max_nearest_neighbor_spacing(L) > half + tol;
}

// Sine-space evaluation grid: u_i = -1 + 2 i / n (i = 0 .. n-1), same for v; points with
// u^2 + v^2 > 1 are outside visible space.
struct UvGrid {
    std::vector<double> u;
    std::vector<double> v;

    bool visible(size_t i, size_t k) const { return u[i] * u[i] + v[k] * v[k] <= 1.0; }
};

inline UvGrid uv_grid(Eigen::Index n) {
    if (n < 2) throw std::invalid_argument("uv grid needs at least 2 points per axis");
    UvGrid g;
    for (Eigen::Index i = 0; i < n; ++i) g.u.push_back(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n));
    g.v = g.u;
    return g;
}

}  // namespace aperture_forge
