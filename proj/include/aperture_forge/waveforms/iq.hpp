#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

struct IqStream {
    Eigen::VectorXd i;
    Eigen::VectorXd q;
    double sample_rate = 1.0;

    Eigen::VectorXcd complex() const {
        Eigen::VectorXcd z(i.size());
        for (Eigen::Index n = 0; n < i.size(); ++n) z(n) = {i(n), q(n)};
        return z;
    }
};

// s(t) = m_I cos(2 pi fc t + theta) - m_Q sin(2 pi fc t + theta)
inline Eigen::VectorXd iq_modulate(const IqStream& m, double fc, double theta) {
    if (m.i.size() != m.q.size()) throw std::invalid_argument("I and Q lengths differ");
    Eigen::VectorXd s(m.i.size());
    for (Eigen::Index n = 0; n < s.size(); ++n) {
        const double arg = two_pi * fc * static_cast<double>(n) / m.sample_rate + theta;
        s(n) = m.i(n) * std::cos(arg) - m.q(n) * std::sin(arg);
    }
    return s;
}

// Hamming-windowed sinc with unit DC gain; taps is forced odd.
inline Eigen::VectorXd fir_lowpass(double cutoff, double fs, Eigen::Index taps) {
    if (!(cutoff > 0.0) || cutoff >= 0.5 * fs) throw std::invalid_argument("cutoff must lie in (0, fs/2)");
    if (taps < 3) throw std::invalid_argument("filter needs at least 3 taps");
    if (taps % 2 == 0) ++taps;
    const Eigen::Index m = (taps - 1) / 2;
    Eigen::VectorXd h(taps);
    const double fcn = cutoff / fs;
    for (Eigen::Index n = 0; n < taps; ++n) {
        const double k = static_cast<double>(n - m);
        const double ideal = (k == 0.0) ? 2.0 * fcn : std::sin(two_pi * fcn * k) / (pi * k);
        const double w = 0.54 - 0.46 * std::cos(two_pi * static_cast<double>(n) / static_cast<double>(taps - 1));
        h(n) = ideal * w;
    }
    return h / h.sum();
}

// Zero-phase ("same" length) FIR filtering.
inline Eigen::VectorXd filter_same(const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
    const Eigen::Index m = (h.size() - 1) / 2;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < h.size(); ++k) {
            const Eigen::Index idx = n + m - k;
            if (idx >= 0 && idx < x.size()) acc += h(k) * x(idx);
        }
        y(n) = acc;
    }
    return y;
}

struct IqDemodParams {
    double carrier_estimate = 0.0;  // f~_c
    double phase_estimate = 0.0;    // phi~_c
    double cutoff = 0.0;            // lowpass cutoff, Hz
    double symbol_rate = 1.0;       // sets the filter length to 8 symbol periods
};

// Mixes with cos and -sin, then lowpasses. A matched carrier returns 0.5 (m_I, m_Q).
inline IqStream iq_demodulate(const Eigen::VectorXd& r, double fs, const IqDemodParams& p) {
    if (!(fs > 0.0)) throw std::invalid_argument("sample rate must be positive");
    if (p.cutoff >= p.carrier_estimate) throw std::invalid_argument("lowpass cutoff must be below the carrier");
    if (!(p.symbol_rate > 0.0)) throw std::invalid_argument("symbol rate must be positive");
    const Eigen::Index taps = static_cast<Eigen::Index>(std::llround(8.0 * fs / p.symbol_rate));
    const Eigen::VectorXd h = fir_lowpass(p.cutoff, fs, taps);
    Eigen::VectorXd xi(r.size()), xq(r.size());
    for (Eigen::Index n = 0; n < r.size(); ++n) {
        const double arg = two_pi * p.carrier_estimate * static_cast<double>(n) / fs + p.phase_estimate;
        xi(n) = r(n) * std::cos(arg);
        xq(n) = -r(n) * std::sin(arg);
    }
    return {filter_same(xi, h), filter_same(xq, h), fs};
}

}  // namespace aperture_forge
