#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

struct RmmseOptions {
    int iterations = 3;
    std::optional<double> noise_floor;  // sigma^2; default 1e-6 x current peak power
    bool structured = true;             // false keeps only the white noise term
};

struct RmmseResult {
    Eigen::VectorXcd profile;          // length = received - waveform + 1
    Eigen::VectorXcd matched_filter;   // normalised matched-filter estimate used as the seed
    int diagonal_loads = 0;            // times the covariance needed extra loading
};

// Received model: y(l) = sum_n x(l - n) s(n) + v(l), l = 0 .. L + N - 2.
inline RmmseResult rmmse_compress(const Eigen::VectorXcd& received, const Eigen::VectorXcd& s,
                                  const RmmseOptions& opt = {}) {
    if (opt.iterations < 1) throw std::invalid_argument("at least one iteration is required");
    const Eigen::Index n = s.size();
    if (n < 1 || received.size() < n) throw std::invalid_argument("received shorter than the waveform");
    const Eigen::Index len = received.size() - n + 1;
    const double es = s.squaredNorm();
    if (!(es > 0.0)) throw std::invalid_argument("zero-energy waveform");

    RmmseResult out;
    out.matched_filter.resize(len);
    for (Eigen::Index l = 0; l < len; ++l)
        out.matched_filter(l) = s.dot(received.segment(l, n)) / es;  // s^H y(l)
    Eigen::VectorXcd x = out.matched_filter;

    // Shifted copies s_k, k = -(N-1) .. N-1, stored as columns.
    Eigen::MatrixXcd shifted = Eigen::MatrixXcd::Zero(n, 2 * n - 1);
    for (Eigen::Index k = -(n - 1); k <= n - 1; ++k)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i - k >= 0 && i - k < n) shifted(i, k + n - 1) = s(i - k);

    for (int it = 0; it < opt.iterations; ++it) {
        const Eigen::VectorXd rho = x.cwiseAbs2();
        const double floor = opt.noise_floor.value_or(1e-6 * rho.maxCoeff());
        if (!(floor > 0.0)) throw std::invalid_argument("noise floor must be positive");
        Eigen::VectorXcd next(len);
        for (Eigen::Index l = 0; l < len; ++l) {
            Eigen::MatrixXcd c = floor * Eigen::MatrixXcd::Identity(n, n);
            if (opt.structured) {
                for (Eigen::Index k = -(n - 1); k <= n - 1; ++k) {
                    const Eigen::Index idx = l + k;
                    if (idx < 0 || idx >= len || rho(idx) == 0.0) continue;
                    const auto col = shifted.col(k + n - 1);
                    c.noalias() += rho(idx) * col * col.adjoint();
                }
            }
            Eigen::LLT<Eigen::MatrixXcd> llt(c);
            if (llt.info() != Eigen::Success) {
                c.diagonal().array() += 1e-3 * c.trace().real() / static_cast<double>(n);
                llt.compute(c);
                ++out.diagonal_loads;
            }
            const Eigen::VectorXcd w = rho(l) * llt.solve(s);
            next(l) = w.dot(received.segment(l, n));
        }
        x = next;
    }
    out.profile = x;
    return out;
}

}  // namespace aperture_forge
