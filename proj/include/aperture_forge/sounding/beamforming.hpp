#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/direction.hpp"
#include "lattice.hpp"

namespace aperture_forge {

enum class SteeringMode { narrowband, true_time_delay };

// w_p = exp(+j 2 pi f' d.x_p / c), f' = f for true time delay, f' = f0 for a phase-only
// taper designed at f0 (which squints when applied at f != f0).
inline Eigen::VectorXcd steering_vector(const SamplingLattice& L, const Direction& dir, double f,
                                        SteeringMode mode = SteeringMode::true_time_delay, double f0 = 0.0) {
    const double fe = mode == SteeringMode::true_time_delay ? f : f0;
    if (!(fe > 0.0)) throw std::invalid_argument("steering frequency must be positive");
    const double k = two_pi * fe / speed_of_light;
    const Eigen::VectorXd proj = L.positions() * dir.unit();
    Eigen::VectorXcd w(proj.size());
    for (Eigen::Index p = 0; p < proj.size(); ++p) w(p) = std::polar(1.0, k * proj(p));
    return w;
}

inline double visible_w(double u, double v) { return std::sqrt(std::max(0.0, 1.0 - u * u - v * v)); }

// Response wH a(u, v) of beamformer weights w to a unit plane wave from (u, v):
// B = sum_p conj(w_p) exp(jk (x u + y v + z w)). Uniform real weights give the classic form.
inline cplx array_factor(const SamplingLattice& L, const Eigen::VectorXcd& weights, double u, double v, double f) {
    const Eigen::MatrixX3d P = L.positions();
    if (weights.size() != P.rows()) throw std::invalid_argument("weight count does not match active elements");
    const double k = two_pi * f / speed_of_light;
    const double w = visible_w(u, v);
    cplx acc = 0.0;
    for (Eigen::Index p = 0; p < P.rows(); ++p)
        acc += std::conj(weights(p)) * std::polar(1.0, k * (P(p, 0) * u + P(p, 1) * v + P(p, 2) * w));
    return acc;
}

// Same response on a (u, v) product grid via the separable lattice structure.
inline Eigen::MatrixXcd array_factor_grid(const SamplingLattice& L, const Eigen::VectorXcd& weights,
                                          const std::vector<double>& us, const std::vector<double>& vs, double f) {
    const auto idx = L.active_indices();
    if (weights.size() != static_cast<Eigen::Index>(idx.size()))
        throw std::invalid_argument("weight count does not match active elements");
    const double k = two_pi * f / speed_of_light;
    Eigen::MatrixXcd Wc = Eigen::MatrixXcd::Zero(L.nx, L.ny);
    for (size_t i = 0; i < idx.size(); ++i) Wc(idx[i] % L.nx, idx[i] / L.nx) = std::conj(weights(static_cast<Eigen::Index>(i)));
    const auto nu = static_cast<Eigen::Index>(us.size()), nv = static_cast<Eigen::Index>(vs.size());
    Eigen::MatrixXcd Ex(L.nx, nu), Ey(L.ny, nv);
    for (Eigen::Index m = 0; m < L.nx; ++m)
        for (Eigen::Index i = 0; i < nu; ++i) Ex(m, i) = std::polar(1.0, k * L.x(m) * us[static_cast<size_t>(i)]);
    for (Eigen::Index n = 0; n < L.ny; ++n)
        for (Eigen::Index i = 0; i < nv; ++i) Ey(n, i) = std::polar(1.0, k * L.y(n) * vs[static_cast<size_t>(i)]);
    Eigen::MatrixXcd B = Ex.transpose() * Wc * Ey;
    if (L.z != 0.0)
        for (Eigen::Index i = 0; i < nu; ++i)
            for (Eigen::Index q = 0; q < nv; ++q)
                B(i, q) *= std::polar(1.0, k * L.z * visible_w(us[static_cast<size_t>(i)], vs[static_cast<size_t>(q)]));
    return B;
}

// 10 log10 |B| at the steering direction (|B| = MN for matched unit-modulus weights).
inline double peak_gain_db(const SamplingLattice& L, const Eigen::VectorXcd& weights, const Direction& dir, double f) {
    const auto [u, v] = dir.sine_space();
    return 10.0 * std::log10(std::abs(array_factor(L, weights, u, v, f)));
}

struct BeamCut {
    double peak_u = 0.0;
    double peak_power = 0.0;
    double u_minus = 0.0;  // half-power crossings along the u axis at fixed v
    double u_plus = 0.0;

    double width_u() const { return u_plus - u_minus; }
    double width_deg() const { return rad2deg(std::asin(std::clamp(u_plus, -1.0, 1.0)) - std::asin(std::clamp(u_minus, -1.0, 1.0))); }
};

// Half-power beamwidth along u through the beam nearest `u_guess`; crossings by bisection.
inline BeamCut measure_beam_cut(const SamplingLattice& L, const Eigen::VectorXcd& weights, double f, double u_guess,
                                double v0 = 0.0, double level = 0.5) {
    auto power = [&](double u) { return std::norm(array_factor(L, weights, u, v0, f)); };
    const double lam = speed_of_light / f;
    const double null = lam / (static_cast<double>(L.nx) * L.dx);
    BeamCut c;
    // coarse scan, then golden-section refinement of the peak
    double best = u_guess, bp = power(u_guess);
    const int n = 40;
    for (int i = -n; i <= n; ++i) {
        const double u = u_guess + null * i / n;
        const double pw = power(u);
        if (pw > bp) {
            bp = pw;
            best = u;
        }
    }
    double a = best - null / n, b = best + null / n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a), f1 = power(x1), f2 = power(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = power(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = power(x2);
        }
    }
    c.peak_u = 0.5 * (a + b);
    c.peak_power = power(c.peak_u);
    const double target = level * c.peak_power;
    auto crossing = [&](double dir) {
        const double step = null / 64.0;
        double inside = c.peak_u, outside = c.peak_u;
        for (int i = 1;; ++i) {
            outside = c.peak_u + dir * step * i;
            if (power(outside) < target) break;
            inside = outside;
            if (i > 64 * 64) throw std::runtime_error("no half-power crossing found");
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (inside + outside);
            (power(mid) >= target ? inside : outside) = mid;
        }
        return 0.5 * (inside + outside);
    };
    c.u_minus = crossing(-1.0);
    c.u_plus = crossing(1.0);
    return c;
}

}  // namespace aperture_forge
