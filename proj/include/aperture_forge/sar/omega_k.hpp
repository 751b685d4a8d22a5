#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "../core/fft.hpp"
#include "image.hpp"
#include "phase_history.hpp"

namespace aperture_forge {

enum class StoltInterp { linear, cubic };

struct OmegaKOptions {
    int range_pad = 2;                          // fast-time zero padding factor
    StoltInterp interp = StoltInterp::linear;
    std::optional<Eigen::Index> reference_bin;  // defaults to the window centre
};

struct OmegaKResult {
    SarImage image;            // native lattice
    Eigen::Index evanescent_bins = 0;
};

namespace detail {

inline cplx interp_uniform(const std::vector<cplx>& v, double u, StoltInterp mode) {
    const auto n = static_cast<Eigen::Index>(v.size());
    const auto i0 = static_cast<Eigen::Index>(std::floor(u));
    const double t = u - static_cast<double>(i0);
    auto at = [&](Eigen::Index i) { return (i < 0 || i >= n) ? cplx{} : v[static_cast<size_t>(i)]; };
    if (mode == StoltInterp::linear) return (1.0 - t) * at(i0) + t * at(i0 + 1);
    // Keys cubic convolution, a = -0.5
    const double t2 = t * t, t3 = t2 * t;
    const double w0 = -0.5 * t3 + t2 - 0.5 * t;
    const double w1 = 1.5 * t3 - 2.5 * t2 + 1.0;
    const double w2 = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
    const double w3 = 0.5 * t3 - 0.5 * t2;
    return w0 * at(i0 - 1) + w1 * at(i0) + w2 * at(i0 + 1) + w3 * at(i0 + 2);
}

}  // namespace detail

// Wavenumber-domain focusing: 2-D FFT, reference back-propagation, Stolt mapping
// K = sqrt(kx^2 + kz^2) resampled per kx column, 2-D inverse FFT.
inline OmegaKResult omega_k(const PhaseHistory& ph, const OmegaKOptions& opt = {}) {
    const auto& p = ph.params;
    p.validate();
    if (!(p.velocity > 0.0)) throw std::invalid_argument("omega-k needs a moving platform");
    if (!ph.data.all_finite()) throw std::invalid_argument("phase history contains non-finite samples");
    if (opt.range_pad < 1) throw std::invalid_argument("range padding must be at least 1");
    const Eigen::Index n = p.samples, m = p.pulses, nf = n * opt.range_pad;
    const Eigen::Index nref = opt.reference_bin.value_or(n / 2);
    const double rref = p.near_range + static_cast<double>(nref) * p.range_bin();
    const double t0 = p.window_start();

    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(nf, m);
    S.topRows(n) = ph.data.data;
    fft::forward_cols(S);
    const auto H = range_reference_spectrum(p, nf);
    for (Eigen::Index q = 0; q < m; ++q)
        for (Eigen::Index k = 0; k < nf; ++k) S(k, q) *= H[static_cast<size_t>(k)];
    fft::forward_rows(S);

    const Eigen::VectorXd f = fft::frequencies(nf, 1.0 / p.sample_rate);
    const Eigen::VectorXd kx = two_pi * fft::frequencies(m, p.along_track_spacing()).array();
    const double kscale = 4.0 * pi / speed_of_light;
    const double df = p.sample_rate / static_cast<double>(nf);

    OmegaKResult res;
    std::vector<cplx> col(static_cast<size_t>(nf)), out(static_cast<size_t>(nf));
    for (Eigen::Index q = 0; q < m; ++q) {
        // reference phase, written in centred frequency order
        for (Eigen::Index k = 0; k < nf; ++k) {
            const double K = kscale * (p.carrier + f(k));
            const Eigen::Index c = (k + nf / 2) % nf;
            if (kx(q) * kx(q) >= K * K) {
                col[static_cast<size_t>(c)] = 0.0;
                ++res.evanescent_bins;
                continue;
            }
            const double kz = std::sqrt(K * K - kx(q) * kx(q));
            col[static_cast<size_t>(c)] = S(k, q) * std::polar(1.0, kz * rref - two_pi * f(k) * t0);
        }
        // Stolt: output kz grid equals the input K grid
        for (Eigen::Index c = 0; c < nf; ++c) {
            const double fk = (static_cast<double>(c) - static_cast<double>(nf / 2)) * df;
            const double kz = kscale * (p.carrier + fk);
            const double K = std::sqrt(kz * kz + kx(q) * kx(q));
            const double u = (K / kscale - p.carrier) / df + static_cast<double>(nf / 2);
            out[static_cast<size_t>(c)] = (u < 0.0 || u > static_cast<double>(nf - 1))
                                              ? cplx{}
                                              : detail::interp_uniform(col, u, opt.interp);
        }
        for (Eigen::Index k = 0; k < nf; ++k) S(k, q) = out[static_cast<size_t>((k + nf / 2) % nf)];
    }
    fft::inverse_rows(S);
    fft::inverse_cols(S);

    res.image = make_image(native_lattice(p), "omega-k");
    for (Eigen::Index q = 0; q < m; ++q)
        for (Eigen::Index j = 0; j < n; ++j)
            res.image.pixels.data(q, j) = S(((j - nref) % nf + nf) % nf, q);
    return res;
}

}  // namespace aperture_forge
