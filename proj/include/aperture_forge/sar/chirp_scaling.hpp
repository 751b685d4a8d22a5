#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "../core/fft.hpp"
#include "image.hpp"
#include "phase_history.hpp"

namespace aperture_forge {

struct ChirpScalingOptions {
    std::optional<Eigen::Index> reference_bin;  // defaults to the window centre
};

struct ChirpScalingResult {
    SarImage image;               // native lattice
    Eigen::Index clamped_doppler_bins = 0;  // |lambda f / 2V| >= 1, dropped from the support
};

// beta = lambda f / 2V; both vanish at f = 0. Requires |beta| < 1.
inline double cs_curvature_factor(double f, double lambda, double velocity) {
    const double beta = lambda * f / (2.0 * velocity);
    if (!(beta * beta < 1.0)) throw std::domain_error("Doppler frequency outside the azimuth support");
    return 1.0 / std::sqrt(1.0 - beta * beta) - 1.0;
}

inline double cs_range_distortion(double f, double lambda, double velocity) {
    const double beta = lambda * f / (2.0 * velocity);
    if (!(beta * beta < 1.0)) throw std::domain_error("Doppler frequency outside the azimuth support");
    const double d = std::sqrt(1.0 - beta * beta);
    return 2.0 * lambda * beta * beta / (speed_of_light * speed_of_light * d * d * d);
}

// Range of closest approach r seen at Doppler f: r (1 + Cs(f)).
inline double cs_migrated_range(double f, double r, double lambda, double velocity) {
    return r * (1.0 + cs_curvature_factor(f, lambda, velocity));
}

// Range-Doppler chirp scaling for an up-chirp exp(+j pi K t^2), zero squint.
// D = sqrt(1 - (lambda f / 2V)^2), curvature factor Cs = 1/D - 1,
// effective rate 1/Ks = 1/K - r alpha, alpha = 2 lambda beta^2 / (c^2 D^3), beta = lambda f / 2V.
inline ChirpScalingResult chirp_scaling(const PhaseHistory& ph, const ChirpScalingOptions& opt = {}) {
    const auto& p = ph.params;
    p.validate();
    if (!(p.velocity > 0.0)) throw std::invalid_argument("chirp scaling needs a moving platform");
    if (!ph.data.all_finite()) throw std::invalid_argument("phase history contains non-finite samples");
    const Eigen::Index n = p.samples, m = p.pulses;
    const Eigen::Index nref = opt.reference_bin.value_or(n / 2);
    const double rref = p.near_range + static_cast<double>(nref) * p.range_bin();
    const double lam = p.wavelength();
    const double K = p.chirp.rate();
    const double c = speed_of_light;

    ChirpScalingResult res;
    Eigen::MatrixXcd S = ph.data.data;
    fft::forward_rows(S);  // azimuth FFT -> range-Doppler

    const Eigen::VectorXd fa = fft::frequencies(m, 1.0 / p.prf);
    Eigen::VectorXd D(m), Ks(m);
    std::vector<bool> valid(static_cast<size_t>(m), true);
    for (Eigen::Index q = 0; q < m; ++q) {
        const double beta = lam * fa(q) / (2.0 * p.velocity);
        if (beta * beta >= 1.0) {
            valid[static_cast<size_t>(q)] = false;
            ++res.clamped_doppler_bins;
            D(q) = 1.0;
            Ks(q) = K;
            continue;
        }
        D(q) = std::sqrt(1.0 - beta * beta);
        const double alpha = 2.0 * lam * beta * beta / (c * c * D(q) * D(q) * D(q));
        Ks(q) = 1.0 / (1.0 / K - rref * alpha);
    }

    // chirp scaling phase
    for (Eigen::Index q = 0; q < m; ++q) {
        if (!valid[static_cast<size_t>(q)]) {
            S.col(q).setZero();
            continue;
        }
        const double cs = 1.0 / D(q) - 1.0;
        const double tref = 2.0 * rref / (c * D(q));
        for (Eigen::Index k = 0; k < n; ++k) {
            const double dt = p.fast_time(k) - tref;
            S(k, q) *= std::polar(1.0, pi * Ks(q) * cs * dt * dt);
        }
    }

    // range compression and bulk range cell migration correction
    fft::forward_cols(S);
    const Eigen::VectorXd fr = fft::frequencies(n, 1.0 / p.sample_rate);
    for (Eigen::Index q = 0; q < m; ++q) {
        const double cs = 1.0 / D(q) - 1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double ph2 = pi * fr(k) * fr(k) / (Ks(q) * (1.0 + cs)) + 4.0 * pi * fr(k) * rref * cs / c;
            S(k, q) *= std::polar(1.0, ph2);
        }
    }
    fft::inverse_cols(S);

    // azimuth compression and residual phase
    for (Eigen::Index q = 0; q < m; ++q) {
        const double cs = 1.0 / D(q) - 1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double r0 = c * p.fast_time(k) / 2.0;
            const double dr = r0 - rref;
            const double residual = -4.0 * pi * Ks(q) * cs * (1.0 + cs) * dr * dr / (c * c);
            S(k, q) *= std::polar(1.0, 4.0 * pi * r0 * D(q) / lam + residual);
        }
    }
    fft::inverse_rows(S);

    res.image = make_image(native_lattice(p), "chirp-scaling");
    res.image.pixels.data = S.transpose();
    return res;
}

}  // namespace aperture_forge
