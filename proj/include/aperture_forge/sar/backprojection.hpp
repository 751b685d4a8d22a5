#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <thread>
#include <vector>

#include "../core/fft.hpp"
#include "image.hpp"
#include "phase_history.hpp"

namespace aperture_forge {

struct BackprojectionOptions {
    int upsample = 16;  // band-limited range interpolation factor
    int threads = 1;
};

// Band-limited upsampling of each column by zero insertion in the spectrum.
inline Eigen::MatrixXcd upsample_columns(const Eigen::MatrixXcd& x, int factor) {
    const Eigen::Index n = x.rows(), nu = n * factor;
    Eigen::MatrixXcd out(nu, x.cols());
    fft::cvec col(static_cast<size_t>(n)), pad(static_cast<size_t>(nu));
    for (Eigen::Index m = 0; m < x.cols(); ++m) {
        for (Eigen::Index i = 0; i < n; ++i) col[static_cast<size_t>(i)] = x(i, m);
        const auto X = fft::forward(col);
        std::fill(pad.begin(), pad.end(), cplx{});
        const Eigen::Index pos = (n + 1) / 2;
        for (Eigen::Index k = 0; k < pos; ++k) pad[static_cast<size_t>(k)] = X[static_cast<size_t>(k)];
        for (Eigen::Index k = pos; k < n; ++k) pad[static_cast<size_t>(nu - n + k)] = X[static_cast<size_t>(k)];
        if (n % 2 == 0) {  // split the Nyquist bin
            pad[static_cast<size_t>(nu - n / 2)] *= 0.5;
            pad[static_cast<size_t>(n / 2)] = pad[static_cast<size_t>(nu - n / 2)];
        }
        const auto y = fft::inverse(pad);
        for (Eigen::Index i = 0; i < nu; ++i) out(i, m) = y[static_cast<size_t>(i)] * static_cast<double>(factor);
    }
    return out;
}

// Correlates the range-compressed data with the exact two-way point response of every pixel.
inline SarImage backproject(const PhaseHistory& ph, const ImageLattice& lattice,
                            const BackprojectionOptions& opt = {}) {
    const auto& p = ph.params;
    p.validate();
    if (!ph.data.all_finite()) throw std::invalid_argument("phase history contains non-finite samples");
    if (opt.upsample < 1 || opt.threads < 1) throw std::invalid_argument("bad backprojection options");
    lattice.validate();
    const double far_range = 0.5 * speed_of_light * p.fast_time(p.samples - 1);
    const double tol = 1e-9 * far_range;
    if (lattice.r(0) < p.near_range - tol || lattice.r(lattice.nr - 1) > far_range + tol)
        throw std::invalid_argument("image lattice lies outside the illuminated range swath");
    SarImage img = make_image(lattice, "backprojection");
    const Eigen::MatrixXcd rc = upsample_columns(range_compress(ph), opt.upsample);
    const double fine_rate = p.sample_rate * opt.upsample;
    const double t0 = p.window_start();
    const double k4 = 4.0 * pi / p.wavelength();
    const Eigen::Index nfine = rc.rows();

    auto work = [&](Eigen::Index i_begin, Eigen::Index i_end) {
        for (Eigen::Index i = i_begin; i < i_end; ++i) {
            const double x = lattice.x(i);
            for (Eigen::Index k = 0; k < lattice.nr; ++k) {
                const double r = lattice.r(k);
                cplx acc = 0.0;
                for (Eigen::Index m = 0; m < p.pulses; ++m) {
                    if (!illuminated(p, m, x, r)) continue;
                    const double R = slant_range(p, m, x, r);
                    const double pos = (2.0 * R / speed_of_light - t0) * fine_rate;
                    const auto i0 = static_cast<Eigen::Index>(std::floor(pos));
                    if (i0 < 0 || i0 + 1 >= nfine) continue;
                    const double w = pos - static_cast<double>(i0);
                    const cplx v = (1.0 - w) * rc(i0, m) + w * rc(i0 + 1, m);
                    acc += v * std::polar(1.0, k4 * R);
                }
                img.pixels.data(i, k) = acc;
            }
        }
    };

    const int nt = std::min<int>(opt.threads, static_cast<int>(lattice.nx));
    if (nt <= 1) {
        work(0, lattice.nx);
    } else {
        std::vector<std::thread> pool;
        const Eigen::Index chunk = (lattice.nx + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            const Eigen::Index b = t * chunk, e = std::min(lattice.nx, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return img;
}

}  // namespace aperture_forge
