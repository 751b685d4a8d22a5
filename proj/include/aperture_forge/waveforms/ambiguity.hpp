#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "lfm.hpp"

namespace aperture_forge {

// psi(tau, fd) = |chi|^2 with chi(tau, fd) = integral u(t) conj(u(t - tau)) exp(j 2 pi fd t) dt,
// u scaled to unit energy. Rows follow `delays`, columns follow `dopplers`.
struct AmbiguitySurface {
    std::vector<double> delays;
    std::vector<double> dopplers;
    Eigen::MatrixXd values;
};

inline AmbiguitySurface ambiguity_surface(const Eigen::VectorXcd& envelope, double fs,
                                          const std::vector<double>& delays,
                                          const std::vector<double>& dopplers) {
    if (envelope.size() == 0) throw std::invalid_argument("empty envelope");
    if (!(fs > 0.0)) throw std::invalid_argument("sample rate must be positive");
    const double energy = envelope.squaredNorm() / fs;
    if (!(energy > 0.0)) throw std::invalid_argument("zero-energy envelope");
    const Eigen::VectorXcd u = envelope / std::sqrt(energy);
    const Eigen::Index n = u.size();
    const double dt = 1.0 / fs;

    std::vector<Eigen::Index> lags;
    for (double tau : delays) {
        const double k = tau * fs;
        const double kr = std::round(k);
        if (std::abs(k - kr) > 1e-6) throw std::invalid_argument("delay grid must sit on the sample grid");
        lags.push_back(static_cast<Eigen::Index>(kr));
    }

    Eigen::MatrixXcd ph(n, static_cast<Eigen::Index>(dopplers.size()));
    for (Eigen::Index q = 0; q < ph.cols(); ++q)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) * dt;
            ph(i, q) = std::polar(1.0, two_pi * dopplers[static_cast<size_t>(q)] * t);
        }

    AmbiguitySurface out{delays, dopplers,
                         Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(delays.size()),
                                               static_cast<Eigen::Index>(dopplers.size()))};
    Eigen::VectorXcd prod(n);
    for (size_t d = 0; d < lags.size(); ++d) {
        const Eigen::Index k = lags[d];
        prod.setZero();
        for (Eigen::Index i = std::max<Eigen::Index>(0, k); i < std::min(n, n + k); ++i)
            prod(i) = u(i) * std::conj(u(i - k));
        for (Eigen::Index q = 0; q < ph.cols(); ++q) {
            const cplx chi = prod.cwiseProduct(ph.col(q)).sum() * dt;
            out.values(static_cast<Eigen::Index>(d), q) = std::norm(chi);
        }
    }
    return out;
}

// Closed form for the rectangular LFM pulse; zero for |tau| > T.
inline double lfm_ambiguity(const LfmChirp& c, double tau, double fd) {
    const double T = c.duration;
    if (std::abs(tau) > T) return 0.0;
    const double a = 1.0 - std::abs(tau) / T;
    const double x = pi * T * (c.rate() * tau + fd) * a;
    const double s = (x == 0.0) ? 1.0 : std::sin(x) / x;
    return (a * s) * (a * s);
}

}  // namespace aperture_forge
