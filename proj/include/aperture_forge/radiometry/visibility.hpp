#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/fft.hpp"
#include "brightness.hpp"
#include "mrla.hpp"

namespace aperture_forge {

// Dimensionless baselines (u, v) = (D_x, D_y) / lambda.
struct Baseline {
    double u = 0.0;
    double v = 0.0;
};

struct BaselineSet {
    std::vector<Baseline> uv;
    double wavelength = 0.21;  // m

    static BaselineSet from_spacings(const std::vector<std::pair<double, double>>& d_xy, double wavelength) {
        if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
        BaselineSet b;
        b.wavelength = wavelength;
        for (const auto& [dx, dy] : d_xy) b.uv.push_back({dx / wavelength, dy / wavelength});
        return b;
    }
};

// Distinct baselines u = (p_a - p_b) / 2 of a linear array with positions in units of lambda / 2,
// both signs and the zero baseline included, sorted by u.
inline BaselineSet linear_array_baselines(const std::vector<int>& positions, double wavelength) {
    if (positions.size() < 2) throw std::invalid_argument("need at least two elements");
    const auto c = spacing_counts(positions);
    BaselineSet b;
    b.wavelength = wavelength;
    for (int d = -static_cast<int>(c.size()) + 1; d < static_cast<int>(c.size()); ++d)
        if (d == 0 || c[static_cast<size_t>(std::abs(d))] > 0) b.uv.push_back({0.5 * d, 0.0});
    return b;
}

// Regular baseline lattice u_i = i du, v_k = k du for i, k in [-half, half). Stored with index
// i + half, so V(half, half) is the zero baseline.
struct UvLattice {
    double spacing = 0.5;
    Eigen::Index half = 16;

    Eigen::Index size() const { return 2 * half; }
    double coord(Eigen::Index i) const { return static_cast<double>(i - half) * spacing; }
    void validate() const {
        if (half < 1 || !(spacing > 0.0)) throw std::invalid_argument("bad baseline lattice");
    }
    BaselineSet baselines(double wavelength = 0.21) const {
        validate();
        BaselineSet b;
        b.wavelength = wavelength;
        for (Eigen::Index i = 0; i < size(); ++i)
            for (Eigen::Index k = 0; k < size(); ++k) b.uv.push_back({coord(i), coord(k)});
        return b;
    }
};

// V(u, v) = int int T_r exp(j 2 pi (u sin(theta) cos(phi) + v sin(theta) sin(phi))) sin(theta) dtheta dphi
// by the midpoint rule, plus point sources.
inline Eigen::VectorXcd visibility_samples(const BrightnessMap& map, const BaselineSet& baselines) {
    map.validate();
    struct Cell {
        double l, m, w;
    };
    std::vector<Cell> cells;
    const double dA = map.d_theta() * map.d_phi();
    for (Eigen::Index i = 0; i < map.n_theta(); ++i) {
        const double th = map.theta(i), st = std::sin(th);
        for (Eigen::Index k = 0; k < map.n_phi(); ++k) {
            const double t = map.T(i, k);
            if (t == 0.0) continue;
            const double ph = map.phi(k);
            cells.push_back({st * std::cos(ph), st * std::sin(ph), t * st * dA});
        }
    }
    for (const auto& p : map.points) cells.push_back({std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi), p.weight});

    Eigen::VectorXcd V(static_cast<Eigen::Index>(baselines.uv.size()));
    for (size_t b = 0; b < baselines.uv.size(); ++b) {
        const auto [u, v] = baselines.uv[b];
        if (!std::isfinite(u) || !std::isfinite(v)) throw std::invalid_argument("baselines must be finite");
        double re = 0.0, im = 0.0;
        for (const auto& c : cells) {
            const double a = two_pi * (u * c.l + v * c.m);
            re += c.w * std::cos(a);
            im += c.w * std::sin(a);
        }
        V(static_cast<Eigen::Index>(b)) = {re, im};
    }
    return V;
}

// Visibilities on a lattice as a 2 half x 2 half matrix (rows u, columns v).
inline Eigen::MatrixXcd visibility_lattice(const BrightnessMap& map, const UvLattice& lat) {
    const Eigen::VectorXcd v = visibility_samples(map, lat.baselines());
    Eigen::MatrixXcd out(lat.size(), lat.size());
    for (Eigen::Index i = 0; i < lat.size(); ++i)
        for (Eigen::Index k = 0; k < lat.size(); ++k) out(i, k) = v(i * lat.size() + k);
    return out;
}

// Arranges scattered baselines into a lattice; throws if they are not exactly the points of a
// regular lattice (callers must grid irregular coverage first).
inline UvLattice lattice_from_baselines(const BaselineSet& b, const Eigen::VectorXcd& V, Eigen::MatrixXcd& out) {
    if (static_cast<size_t>(V.size()) != b.uv.size()) throw std::invalid_argument("one visibility per baseline required");
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(b.uv.size()))));
    if (n < 2 || n * n != static_cast<Eigen::Index>(b.uv.size()) || n % 2) throw std::invalid_argument("baselines do not form a square even-sized lattice");
    std::vector<double> us, vs;
    for (const auto& p : b.uv) {
        us.push_back(p.u);
        vs.push_back(p.v);
    }
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (static_cast<Eigen::Index>(us.size()) != n || static_cast<Eigen::Index>(vs.size()) != n) throw std::invalid_argument("irregular baseline lattice");
    UvLattice lat;
    lat.half = n / 2;
    lat.spacing = us[1] - us[0];
    const double tol = 1e-9 * lat.spacing;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(us[static_cast<size_t>(i)] - lat.coord(i)) > tol || std::abs(vs[static_cast<size_t>(i)] - lat.coord(i)) > tol)
            throw std::invalid_argument("irregular baseline lattice");
    out.resize(n, n);
    for (size_t q = 0; q < b.uv.size(); ++q) {
        const auto i = static_cast<Eigen::Index>(std::llround(b.uv[q].u / lat.spacing)) + lat.half;
        const auto k = static_cast<Eigen::Index>(std::llround(b.uv[q].v / lat.spacing)) + lat.half;
        out(i, k) = V(static_cast<Eigen::Index>(q));
    }
    return lat;
}

// Inverse transform on the direction-cosine grid l_p = p / (2 half du), p in [-half, half).
// The image holds T_r / cos(theta) (the Jacobian of dl dm = cos(theta) sin(theta) dtheta dphi).
struct RadiometricImage {
    Eigen::VectorXd l, m;
    Eigen::MatrixXd B;          // rows l, columns m
    double max_imag = 0.0;      // imaginary residue of the transform
    double min_value = 0.0;     // before clipping
    double negative_fraction = 0.0;
    bool clipped = false;

    // T_r = B cos(theta) inside the unit disc, zero outside.
    Eigen::MatrixXd received() const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(B.rows(), B.cols());
        for (Eigen::Index i = 0; i < B.rows(); ++i)
            for (Eigen::Index k = 0; k < B.cols(); ++k) {
                const double r2 = l(i) * l(i) + m(k) * m(k);
                if (r2 < 1.0) out(i, k) = B(i, k) * std::sqrt(1.0 - r2);
            }
        return out;
    }
};

inline RadiometricImage invert_visibilities(const Eigen::MatrixXcd& V, const UvLattice& lat, bool clip_negative = false) {
    lat.validate();
    if (V.rows() != lat.size() || V.cols() != lat.size()) throw std::invalid_argument("visibility matrix does not match the lattice");
    if (lat.spacing > 0.5 + 1e-12) throw std::domain_error("baseline steps above half a wavelength alias the visible disc");
    // T(l_p, m_q) = du^2 sum_{i,k} V(u_i, v_k) exp(-j 2 pi (u_i l_p + v_k m_q)); with u_i l_p = i p / N this is a
    // forward DFT in shifted index order.
    const Eigen::MatrixXcd img = lat.spacing * lat.spacing * fft::fftshift(fft::forward2(fft::ifftshift(V)));
    RadiometricImage out;
    const Eigen::Index N = lat.size();
    out.l.resize(N);
    for (Eigen::Index p = 0; p < N; ++p) out.l(p) = static_cast<double>(p - lat.half) / (static_cast<double>(N) * lat.spacing);
    out.m = out.l;
    out.B = img.real();
    out.max_imag = img.imag().cwiseAbs().maxCoeff();
    out.min_value = out.B.minCoeff();
    out.negative_fraction = static_cast<double>((out.B.array() < 0.0).count()) / static_cast<double>(out.B.size());
    if (clip_negative) {
        out.B = out.B.cwiseMax(0.0);
        out.clipped = true;
    }
    return out;
}

inline RadiometricImage invert_visibilities(const BaselineSet& b, const Eigen::VectorXcd& V, bool clip_negative = false) {
    Eigen::MatrixXcd grid;
    const auto lat = lattice_from_baselines(b, V, grid);
    return invert_visibilities(grid, lat, clip_negative);
}

}  // namespace aperture_forge
