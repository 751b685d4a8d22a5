#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "../core/fft.hpp"
#include "../core/grid.hpp"

namespace aperture_forge {

// p_theta(s) = integral g(s cos t - w sin t, s sin t + w cos t) dw, detector sample j at s = (j - ns/2) ds.
struct TomoProjections {
    std::vector<double> angles;  // rad, in [0, pi)
    double spacing = 1.0;        // ds
    Eigen::MatrixXd data;        // angles x detector samples

    double s(Eigen::Index j) const { return (static_cast<double>(j) - static_cast<double>(data.cols() / 2)) * spacing; }

    void validate() const {
        if (static_cast<Eigen::Index>(angles.size()) != data.rows()) throw std::invalid_argument("angle count mismatch");
        if (!(spacing > 0.0) || data.cols() < 2) throw std::invalid_argument("bad detector sampling");
        std::vector<double> a = angles;
        std::sort(a.begin(), a.end());
        if (std::unique(a.begin(), a.end()) - a.begin() < 2)
            throw std::invalid_argument("tomography needs at least two distinct angles");
        for (double t : angles)
            if (t < 0.0 || t >= pi) throw std::invalid_argument("projection angles must lie in [0, pi)");
    }
};

struct Disc {
    double cx = 0.0, cy = 0.0, radius = 1.0, value = 1.0;
};

inline TomoProjections project_discs(const std::vector<Disc>& discs, const std::vector<double>& angles,
                                     Eigen::Index samples, double spacing) {
    TomoProjections p{angles, spacing, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(angles.size()), samples)};
    for (Eigen::Index a = 0; a < p.data.rows(); ++a) {
        const double ct = std::cos(angles[static_cast<size_t>(a)]), st = std::sin(angles[static_cast<size_t>(a)]);
        for (Eigen::Index j = 0; j < samples; ++j)
            for (const auto& d : discs) {
                const double off = p.s(j) - (d.cx * ct + d.cy * st);
                const double h = d.radius * d.radius - off * off;
                if (h > 0.0) p.data(a, j) += 2.0 * d.value * std::sqrt(h);
            }
    }
    return p;
}

// Pixel (i, k) centred at x = (i - n/2) ds, y = (k - n/2) ds; 4x4 supersampled coverage.
inline RealGrid rasterize_discs(const std::vector<Disc>& discs, Eigen::Index n, double spacing) {
    const double o = -static_cast<double>(n / 2) * spacing;
    RealGrid g(n, n, {o, spacing, "m"}, {o, spacing, "m"});
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double x = g.axis0[i] + (a - 1.5) * spacing / 4.0;
                    const double y = g.axis1[k] + (b - 1.5) * spacing / 4.0;
                    for (const auto& d : discs)
                        if ((x - d.cx) * (x - d.cx) + (y - d.cy) * (y - d.cy) <= d.radius * d.radius) acc += d.value;
                }
            g.data(i, k) = acc / 16.0;
        }
    return g;
}

namespace detail {
inline Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace detail

// Filtered backprojection with the band-limited ramp (Ram-Lak) kernel.
inline RealGrid tomo_fbp(const TomoProjections& proj, Eigen::Index n) {
    proj.validate();
    const Eigen::Index ns = proj.data.cols();
    const Eigen::Index nf = detail::next_pow2(2 * ns);
    const double ds = proj.spacing;
    fft::cvec kern(static_cast<size_t>(nf), cplx{});
    for (Eigen::Index k = -(nf / 2) + 1; k < nf / 2; ++k) {
        double h = 0.0;
        if (k == 0) h = 1.0 / (4.0 * ds * ds);
        else if (k % 2 != 0) h = -1.0 / (pi * pi * static_cast<double>(k * k) * ds * ds);
        kern[static_cast<size_t>((k + nf) % nf)] = h;
    }
    const auto K = fft::forward(kern);

    Eigen::MatrixXd q(proj.data.rows(), ns);
    fft::cvec row(static_cast<size_t>(nf));
    for (Eigen::Index a = 0; a < proj.data.rows(); ++a) {
        std::fill(row.begin(), row.end(), cplx{});
        for (Eigen::Index j = 0; j < ns; ++j) row[static_cast<size_t>(j)] = proj.data(a, j);
        auto X = fft::forward(row);
        for (size_t k = 0; k < X.size(); ++k) X[k] *= K[k];
        const auto y = fft::inverse(X);
        for (Eigen::Index j = 0; j < ns; ++j) q(a, j) = y[static_cast<size_t>(j)].real() * ds;
    }

    const double o = -static_cast<double>(n / 2) * ds;
    RealGrid g(n, n, {o, ds, "m"}, {o, ds, "m"});
    const double dtheta = pi / static_cast<double>(proj.angles.size());
    for (Eigen::Index a = 0; a < q.rows(); ++a) {
        const double ct = std::cos(proj.angles[static_cast<size_t>(a)]), st = std::sin(proj.angles[static_cast<size_t>(a)]);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k) {
                const double s = g.axis0[i] * ct + g.axis1[k] * st;
                const double u = s / ds + static_cast<double>(ns / 2);
                const auto j0 = static_cast<Eigen::Index>(std::floor(u));
                if (j0 < 0 || j0 + 1 >= ns) continue;
                const double w = u - static_cast<double>(j0);
                g.data(i, k) += ((1.0 - w) * q(a, j0) + w * q(a, j0 + 1)) * dtheta;
            }
    }
    return g;
}

// Direct Fourier reconstruction: projection spectra placed on polar rays, bilinear
// interpolation in (radius, angle) onto the Cartesian grid, 2-D inverse FFT.
inline RealGrid tomo_polar_interp(const TomoProjections& proj, Eigen::Index n, int pad = 4) {
    proj.validate();
    if (pad < 1) throw std::invalid_argument("padding must be at least 1");
    const Eigen::Index ns = proj.data.cols();
    const Eigen::Index nf = detail::next_pow2(std::max(ns, n) * pad);
    const double ds = proj.spacing;

    std::vector<size_t> order(proj.angles.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return proj.angles[a] < proj.angles[b]; });
    std::vector<double> th;
    std::vector<fft::cvec> spec;
    fft::cvec row(static_cast<size_t>(nf));
    for (size_t idx : order) {
        if (!th.empty() && proj.angles[idx] == th.back()) continue;
        std::fill(row.begin(), row.end(), cplx{});
        for (Eigen::Index j = 0; j < ns; ++j) {
            const Eigen::Index off = j - ns / 2;  // s = off * ds lands on index off mod nf
            row[static_cast<size_t>((off + nf) % nf)] = proj.data(static_cast<Eigen::Index>(idx), j);
        }
        th.push_back(proj.angles[idx]);
        spec.push_back(fft::forward(row));
    }
    const size_t na = th.size();

    auto radial = [&](size_t a, double rho) -> cplx {
        // rho in signed bins
        const double u = rho;
        const auto i0 = static_cast<Eigen::Index>(std::floor(u));
        const double w = u - static_cast<double>(i0);
        auto at = [&](Eigen::Index i) {
            if (i < -nf / 2 || i >= nf / 2) return cplx{};
            return spec[a][static_cast<size_t>((i + nf) % nf)];
        };
        return (1.0 - w) * at(i0) + w * at(i0 + 1);
    };

    Eigen::MatrixXcd G(nf, nf);
    for (Eigen::Index k1 = 0; k1 < nf; ++k1)
        for (Eigen::Index k2 = 0; k2 < nf; ++k2) {
            const double f1 = static_cast<double>(k1 < nf / 2 ? k1 : k1 - nf);
            const double f2 = static_cast<double>(k2 < nf / 2 ? k2 : k2 - nf);
            double rho = std::hypot(f1, f2);
            double ang = std::atan2(f2, f1);
            if (ang < 0.0) {
                ang += pi;
                rho = -rho;
            }
            if (ang >= pi) {
                ang -= pi;
                rho = -rho;
            }
            // bracket the angle; past the last ray wrap to the first with the radius negated
            const auto it = std::upper_bound(th.begin(), th.end(), ang);
            size_t a1, a0;
            double t0, t1, r1 = rho;
            if (it == th.begin()) {
                a0 = na - 1;
                a1 = 0;
                t0 = th[a0] - pi;
                t1 = th[a1];
            } else if (it == th.end()) {
                a0 = na - 1;
                a1 = 0;
                t0 = th[a0];
                t1 = th[a1] + pi;
            } else {
                a1 = static_cast<size_t>(it - th.begin());
                a0 = a1 - 1;
                t0 = th[a0];
                t1 = th[a1];
            }
            double r0 = rho;
            if (it == th.begin()) r0 = -rho;  // ray a0 is reached through angle - pi
            if (it == th.end()) r1 = -rho;    // ray a1 is reached through angle + pi
            const double w = (ang - t0) / (t1 - t0);
            G(k1, k2) = (1.0 - w) * radial(a0, r0) + w * radial(a1, r1);
        }
    const Eigen::MatrixXcd g_full = fft::fftshift(fft::inverse2(G)) / ds;

    const double o = -static_cast<double>(n / 2) * ds;
    RealGrid g(n, n, {o, ds, "m"}, {o, ds, "m"});
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) g.data(i, k) = g_full(nf / 2 - n / 2 + i, nf / 2 - n / 2 + k).real();
    return g;
}

}  // namespace aperture_forge
