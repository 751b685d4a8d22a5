#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/direction.hpp"
#include "frequency_grid.hpp"
#include "lattice.hpp"

namespace aperture_forge {

struct FibOptions {
    bool shaped = true;            // false: no pattern terms, the design collapses to h / |h|^2
    double sidelobe_weight = 1.0;  // extra LS weight outside the mainlobe mask
    double mask_extent = 1.5;      // mainlobe mask half-width, in target beamwidths
    Eigen::Index pattern_points = 801;
    int match_iterations = 8;      // rescale the design width until the measured width hits the target
};

namespace detail {

struct AxisDesign {
    std::vector<double> pos;
    double k = 0.0;
    double u0 = 0.0;
    Eigen::VectorXd us, wts;
    Eigen::MatrixXcd A;  // a(u_i) columns
    Eigen::LDLT<Eigen::MatrixXcd> ldlt;
    Eigen::VectorXcd h, qh;

    AxisDesign(const std::vector<double>& p, double kk, double u0_, double mask_halfwidth, const FibOptions& o)
        : pos(p), k(kk), u0(u0_) {
        const auto n = static_cast<Eigen::Index>(pos.size());
        const Eigen::Index P = o.pattern_points;
        if (P < 2 * n) throw std::invalid_argument("too few pattern points for the aperture");
        us.resize(P);
        wts.resize(P);
        A.resize(n, P);
        for (Eigen::Index i = 0; i < P; ++i) {
            us(i) = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(P - 1);
            wts(i) = std::abs(us(i) - u0) > mask_halfwidth ? 1.0 + o.sidelobe_weight : 1.0;
            for (Eigen::Index m = 0; m < n; ++m) A(m, i) = std::polar(1.0, k * pos[static_cast<size_t>(m)] * us(i));
        }
        Eigen::MatrixXcd Q = A * wts.asDiagonal() * A.adjoint();
        Q.diagonal().array() += 1e-9 * Q.trace().real() / static_cast<double>(n);
        ldlt.compute(Q);
        h.resize(n);
        for (Eigen::Index m = 0; m < n; ++m) h(m) = std::polar(1.0, k * pos[static_cast<size_t>(m)] * u0);
        qh = ldlt.solve(h);
    }

    // Gaussian target of half-power width du; constrained LS solution.
    Eigen::VectorXcd solve(double du) const {
        const double c = 4.0 * std::log(2.0) / (du * du);
        Eigen::VectorXd t(us.size());
        for (Eigen::Index i = 0; i < us.size(); ++i) t(i) = wts(i) * std::exp(-0.5 * c * (us(i) - u0) * (us(i) - u0));
        const Eigen::VectorXcd b = A * t.cast<cplx>();
        const Eigen::VectorXcd qb = ldlt.solve(b);
        return qb + qh * ((1.0 - h.dot(qb)) / h.dot(qh));
    }

    double power(const Eigen::VectorXcd& g, double u) const {
        cplx acc = 0.0;
        for (size_t m = 0; m < pos.size(); ++m) acc += std::conj(g(static_cast<Eigen::Index>(m))) * std::polar(1.0, k * pos[m] * u);
        return std::norm(acc);
    }

    // Half-power width of g^H a(u) around u0 (gain there is 1 by construction).
    double width(const Eigen::VectorXcd& g) const {
        auto cross = [&](double dir) {
            const double step = 1e-3;
            double in = u0, out = u0;
            for (int i = 1; i < 4000; ++i) {
                out = u0 + dir * step * i;
                if (power(g, out) < 0.5) break;
                in = out;
            }
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (in + out);
                (power(g, mid) >= 0.5 ? in : out) = mid;
            }
            return 0.5 * (in + out);
        };
        return cross(1.0) - cross(-1.0);
    }
};

}  // namespace detail

// One axis: minimise sum_i W_i |g^H a(u_i) - D(u_i)|^2 subject to g^H h = 1, with a Gaussian
// target D centred on u0. Closed form with Q = sum W a a^H, b = sum W D a:
// g = Q^-1 b + Q^-1 h (1 - h^H Q^-1 b) / (h^H Q^-1 h).
// The Gaussian's width is rescaled until the realised half-power width equals du.
inline Eigen::VectorXcd fib_axis_weights(const std::vector<double>& pos, double k, double u0, double du,
                                         const FibOptions& o = {}) {
    const auto n = static_cast<Eigen::Index>(pos.size());
    Eigen::VectorXcd h(n);
    for (Eigen::Index m = 0; m < n; ++m) h(m) = std::polar(1.0, k * pos[static_cast<size_t>(m)] * u0);
    if (!o.shaped) return h / h.squaredNorm();
    const detail::AxisDesign design(pos, k, u0, o.mask_extent * du, o);
    double d = du;
    Eigen::VectorXcd g = design.solve(d);
    for (int it = 0; it < o.match_iterations; ++it) {
        const double got = design.width(g);
        if (std::abs(got / du - 1.0) < 1e-3) break;
        d *= du / got;
        g = design.solve(d);
    }
    return g;
}

inline double sine_space_width(double u0, double width_deg) {
    const double t0 = std::asin(std::clamp(u0, -1.0, 1.0));
    const double half = 0.5 * deg2rad(width_deg);
    return std::sin(t0 + half) - std::sin(t0 - half);
}

// Separable weights w = e^{j k z w0} gx (x) gy over a full rectangular lattice at one tone.
inline Eigen::VectorXcd fib_weights_at(const SamplingLattice& L, double f, const Direction& dir, double beamwidth_deg,
                                       const FibOptions& o = {}) {
    L.validate();
    if (!L.full()) throw std::invalid_argument("frequency-invariant design needs a full rectangular lattice");
    const auto [u0, v0] = dir.sine_space();
    const double k = two_pi * f / speed_of_light;
    std::vector<double> xs, ys;
    for (Eigen::Index m = 0; m < L.nx; ++m) xs.push_back(L.x(m));
    for (Eigen::Index n = 0; n < L.ny; ++n) ys.push_back(L.y(n));
    const Eigen::VectorXcd gx = fib_axis_weights(xs, k, u0, sine_space_width(u0, beamwidth_deg), o);
    const Eigen::VectorXcd gy = fib_axis_weights(ys, k, v0, sine_space_width(v0, beamwidth_deg), o);
    const cplx zph = std::polar(1.0, k * L.z * dir.unit().z());
    Eigen::VectorXcd w(L.total());
    for (Eigen::Index n = 0; n < L.ny; ++n)
        for (Eigen::Index m = 0; m < L.nx; ++m) w(m + L.nx * n) = zph * gx(m) * gy(n);
    return w;
}

// Uniform-aperture half-power width in u, approx 0.886 lambda / (N d).
inline double uniform_beamwidth_u(Eigen::Index n, double d, double f) {
    return 0.886 * speed_of_light / f / (static_cast<double>(n) * d);
}

// Per-tone weights holding the half-power beamwidth at `beamwidth_deg` across the grid.
inline std::vector<Eigen::VectorXcd> fib_weights(const SamplingLattice& L, const FrequencyGrid& grid, const Direction& dir,
                                                 double beamwidth_deg, const FibOptions& o = {}) {
    grid.validate();
    const auto [u0, v0] = dir.sine_space();
    const double du = std::min(sine_space_width(u0, beamwidth_deg), sine_space_width(v0, beamwidth_deg));
    const double narrowest = std::max(uniform_beamwidth_u(L.nx, L.dx, grid.f_start), uniform_beamwidth_u(L.ny, L.dy, grid.f_start));
    if (!(beamwidth_deg > 0.0) || du < 0.98 * narrowest)
        throw std::invalid_argument("target beamwidth is below what the aperture resolves at the lowest tone");
    if (du >= 1.0) throw std::invalid_argument("target beamwidth fills visible space");
    std::vector<Eigen::VectorXcd> out;
    const Eigen::Index S = grid.size();
    out.reserve(static_cast<size_t>(S));
    for (Eigen::Index s = 0; s < S; ++s) out.push_back(fib_weights_at(L, grid[s], dir, beamwidth_deg, o));
    return out;
}

}  // namespace aperture_forge
