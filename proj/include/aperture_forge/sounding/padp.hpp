#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/direction.hpp"
#include "../core/fft.hpp"
#include "beamforming.hpp"
#include "channel.hpp"

namespace aperture_forge {

enum class Window { rectangular, hamming };

inline Eigen::VectorXd window_coefficients(Eigen::Index S, Window w) {
    Eigen::VectorXd c = Eigen::VectorXd::Ones(S);
    if (w == Window::hamming && S > 1)
        for (Eigen::Index s = 0; s < S; ++s)
            c(s) = 0.54 - 0.46 * std::cos(two_pi * static_cast<double>(s) / static_cast<double>(S - 1));
    return c;
}

struct PadpOptions {
    Window window = Window::hamming;
    int pad = 4;  // zero-pad factor L
    SteeringMode mode = SteeringMode::true_time_delay;
    double design_frequency = 0.0;  // f0 for narrowband steering; 0 = first tone
};

// x(tau_m) = (1/S) sum_s c_s b_s exp(j 2 pi m s / (L S)), tau_m = m / (L S df).
struct Pdp {
    Eigen::VectorXcd response;
    Eigen::VectorXd power;
    double delay_step = 0.0;

    double delay(Eigen::Index m) const { return static_cast<double>(m) * delay_step; }
};

inline double steering_design_frequency(const FrequencyGrid& g, const PadpOptions& o) {
    return o.design_frequency > 0.0 ? o.design_frequency : g.f_start;
}

// b(f_s) = w(f_s)^H y(f_s) for the steering direction.
inline Eigen::VectorXcd beamform_tones(const SweepData& sw, const Direction& dir, const PadpOptions& o = {}) {
    sw.validate();
    const Eigen::Index S = sw.grid.size();
    const double f0 = steering_design_frequency(sw.grid, o);
    Eigen::VectorXcd b(S);
    for (Eigen::Index s = 0; s < S; ++s)
        b(s) = steering_vector(sw.lattice, dir, sw.grid[s], o.mode, f0).dot(sw.s21.col(s));
    return b;
}

// Same with caller-supplied weights per tone (e.g. frequency-invariant designs).
inline Eigen::VectorXcd beamform_tones(const SweepData& sw, const std::vector<Eigen::VectorXcd>& weights) {
    sw.validate();
    const Eigen::Index S = sw.grid.size();
    if (static_cast<Eigen::Index>(weights.size()) != S) throw std::invalid_argument("need one weight vector per tone");
    Eigen::VectorXcd b(S);
    for (Eigen::Index s = 0; s < S; ++s) {
        if (weights[static_cast<size_t>(s)].size() != sw.s21.rows()) throw std::invalid_argument("weight length mismatch");
        b(s) = weights[static_cast<size_t>(s)].dot(sw.s21.col(s));
    }
    return b;
}

inline Pdp delay_profile(const Eigen::VectorXcd& b, const FrequencyGrid& g, Window window = Window::hamming, int pad = 4) {
    const Eigen::Index S = g.size();
    if (b.size() != S) throw std::invalid_argument("beam output length does not match the grid");
    if (pad < 1) throw std::invalid_argument("zero-pad factor must be at least 1");
    const Eigen::VectorXd c = window_coefficients(S, window);
    const Eigen::Index n = S * pad;
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    x.head(S) = c.cwiseProduct(b);
    Pdp out;
    out.response = fft::inverse(x) * static_cast<double>(pad);  // inverse carries 1/(L S)
    out.power = out.response.cwiseAbs2();
    out.delay_step = 1.0 / (static_cast<double>(n) * g.df);
    return out;
}

// Delay response at an arbitrary delay (no grid restriction).
inline cplx delay_response_at(const Eigen::VectorXcd& b, const FrequencyGrid& g, double tau, Window window = Window::hamming) {
    const Eigen::Index S = g.size();
    const Eigen::VectorXd c = window_coefficients(S, window);
    cplx acc = 0.0;
    for (Eigen::Index s = 0; s < S; ++s) acc += c(s) * b(s) * std::polar(1.0, two_pi * static_cast<double>(s) * g.df * tau);
    return acc / static_cast<double>(S);
}

inline Pdp padp(const SweepData& sw, const Direction& dir, const PadpOptions& o = {}) {
    return delay_profile(beamform_tones(sw, dir, o), sw.grid, o.window, o.pad);
}

// Index of tau on the padded delay grid; off-grid delays are rejected.
inline Eigen::Index delay_bin(const FrequencyGrid& g, int pad, double tau) {
    const double pos = tau * static_cast<double>(g.size()) * static_cast<double>(pad) * g.df;
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-6 || r < 0.0 || r >= static_cast<double>(g.size() * pad))
        throw std::invalid_argument("delay is not on the delay grid; interpolate explicitly");
    return static_cast<Eigen::Index>(r);
}

struct DelaySlice {
    UvGrid grid;
    double delay = 0.0;
    Eigen::MatrixXcd response;  // (u, v), zero outside visible space
    Eigen::MatrixXd power;
};

// Beam outputs b(f_s; u, v) over the uv grid for one tone via the separable lattice.
inline Eigen::MatrixXcd beamform_grid(const SweepData& sw, Eigen::Index s, const UvGrid& grid, const PadpOptions& o) {
    const auto& L = sw.lattice;
    const double fe = o.mode == SteeringMode::true_time_delay ? sw.grid[s] : steering_design_frequency(sw.grid, o);
    const double k = two_pi * fe / speed_of_light;
    const auto idx = L.active_indices();
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(L.nx, L.ny);
    for (size_t i = 0; i < idx.size(); ++i) Y(idx[i] % L.nx, idx[i] / L.nx) = sw.s21(static_cast<Eigen::Index>(i), s);
    const auto nu = static_cast<Eigen::Index>(grid.u.size()), nv = static_cast<Eigen::Index>(grid.v.size());
    Eigen::MatrixXcd Ex(L.nx, nu), Ey(L.ny, nv);
    for (Eigen::Index m = 0; m < L.nx; ++m)
        for (Eigen::Index i = 0; i < nu; ++i) Ex(m, i) = std::polar(1.0, -k * L.x(m) * grid.u[static_cast<size_t>(i)]);
    for (Eigen::Index n = 0; n < L.ny; ++n)
        for (Eigen::Index i = 0; i < nv; ++i) Ey(n, i) = std::polar(1.0, -k * L.y(n) * grid.v[static_cast<size_t>(i)]);
    Eigen::MatrixXcd B = Ex.transpose() * Y * Ey;
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index q = 0; q < nv; ++q) {
            if (!grid.visible(static_cast<size_t>(i), static_cast<size_t>(q))) {
                B(i, q) = 0.0;
            } else if (L.z != 0.0) {
                B(i, q) *= std::polar(1.0, -k * L.z * visible_w(grid.u[static_cast<size_t>(i)], grid.v[static_cast<size_t>(q)]));
            }
        }
    return B;
}

// Slices x(tau_m; u, v) = (1/S) sum_s c_s b(f_s; u, v) exp(j 2 pi m s / (L S)) for several bins.
inline std::vector<DelaySlice> delay_slices(const SweepData& sw, const UvGrid& grid, const std::vector<Eigen::Index>& bins,
                                            const PadpOptions& o = {}) {
    sw.validate();
    const Eigen::Index S = sw.grid.size();
    const Eigen::Index n = S * o.pad;
    const Eigen::VectorXd c = window_coefficients(S, o.window);
    std::vector<DelaySlice> out;
    for (Eigen::Index m : bins) {
        if (m < 0 || m >= n) throw std::invalid_argument("delay bin out of range");
        DelaySlice d;
        d.grid = grid;
        d.delay = static_cast<double>(m) / (static_cast<double>(n) * sw.grid.df);
        d.response = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.u.size()), static_cast<Eigen::Index>(grid.v.size()));
        out.push_back(std::move(d));
    }
    for (Eigen::Index s = 0; s < S; ++s) {
        const Eigen::MatrixXcd B = beamform_grid(sw, s, grid, o);
        for (size_t i = 0; i < bins.size(); ++i) {
            const double ph = two_pi * static_cast<double>((bins[i] * s) % n) / static_cast<double>(n);
            out[i].response += (c(s) * std::polar(1.0, ph)) * B;
        }
    }
    for (auto& d : out) {
        d.response /= static_cast<double>(S);
        d.power = d.response.cwiseAbs2();
    }
    return out;
}

inline DelaySlice delay_slice(const SweepData& sw, const UvGrid& grid, double tau, const PadpOptions& o = {}) {
    return delay_slices(sw, grid, {delay_bin(sw.grid, o.pad, tau)}, o).front();
}

// r(tau_m) = sum over visible (u, v) of |x(tau_m; u, v)|^2.
inline Eigen::VectorXd aggregate_pdp(const std::vector<DelaySlice>& slices) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(slices.size()));
    for (size_t i = 0; i < slices.size(); ++i) r(static_cast<Eigen::Index>(i)) = slices[i].power.sum();
    return r;
}

// ---- spherical (near-field) beamforming ----

inline Eigen::Vector3d virtual_source_position(const SamplingLattice& L, const Direction& dir, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("virtual source range must be positive");
    const Eigen::Vector3d d = dir.unit();
    if (!(d.z() > 1e-9)) throw std::invalid_argument("virtual source lies in the lattice plane");
    return Eigen::Vector3d(0.0, 0.0, L.z) + R * d;
}

inline Eigen::VectorXd virtual_source_distances(const SamplingLattice& L, const Direction& dir, double R) {
    const Eigen::Vector3d s = virtual_source_position(L, dir, R);
    const Eigen::MatrixX3d P = L.positions();
    Eigen::VectorXd D(P.rows());
    for (Eigen::Index p = 0; p < P.rows(); ++p) D(p) = (P.row(p).transpose() - s).norm();
    return D;
}

// Wideband spherical beam output b(u0, v0, R) = (1/S) sum_s c_s w_s^H y_s with w_s = exp(-j k_s D):
// the conjugate of the propagation phase exp(-j k D) carried by a point-source ray.
inline cplx spherical_beam(const SweepData& sw, const Direction& dir, double R, Window window = Window::hamming) {
    const Eigen::VectorXd D = virtual_source_distances(sw.lattice, dir, R);
    const Eigen::Index S = sw.grid.size();
    const Eigen::VectorXd c = window_coefficients(S, window);
    cplx acc = 0.0;
    for (Eigen::Index s = 0; s < S; ++s) {
        const double k = two_pi * sw.grid[s] / speed_of_light;
        cplx t = 0.0;
        for (Eigen::Index p = 0; p < D.size(); ++p) t += std::polar(1.0, k * D(p)) * sw.s21(p, s);
        acc += c(s) * t;
    }
    return acc / static_cast<double>(S);
}

struct RangeProfile {
    std::vector<double> ranges;
    Eigen::VectorXcd response;
    Eigen::VectorXd power;
};

inline RangeProfile spherical_padp(const SweepData& sw, const Direction& dir, double r0, double r1, double dr,
                                   Window window = Window::hamming) {
    sw.validate();
    if (!(r0 > 0.0) || !(r1 >= r0) || !(dr > 0.0)) throw std::invalid_argument("need 0 < R0 <= R1 and dR > 0");
    RangeProfile out;
    const auto n = static_cast<Eigen::Index>(std::floor((r1 - r0) / dr + 1e-9)) + 1;
    out.response.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.ranges.push_back(r0 + static_cast<double>(i) * dr);
        out.response(i) = spherical_beam(sw, dir, out.ranges.back(), window);
    }
    out.power = out.response.cwiseAbs2();
    return out;
}

// Near-field slice |b(u, v, R)|^2 over the visible part of the uv grid.
inline Eigen::MatrixXd spherical_slice(const SweepData& sw, const UvGrid& grid, double R, Window window = Window::hamming) {
    sw.validate();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid.u.size()), static_cast<Eigen::Index>(grid.v.size()));
    for (size_t i = 0; i < grid.u.size(); ++i)
        for (size_t q = 0; q < grid.v.size(); ++q) {
            if (grid.u[i] * grid.u[i] + grid.v[q] * grid.v[q] >= 1.0) continue;
            P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) =
                std::norm(spherical_beam(sw, Direction(SineSpace{grid.u[i], grid.v[q]}), R, window));
        }
    return P;
}

}  // namespace aperture_forge
