#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"

namespace aperture_forge {

struct BfskParams {
    double f0 = 0.0;          // tone for bit 0, Hz
    double f1 = 1.0;          // tone for bit 1, Hz
    double symbol_rate = 1.0; // f_SY
    double sample_rate = 8.0; // f_s

    double modulation_index() const { return std::abs(f1 - f0) / symbol_rate; }
};

// a[n] = (-1)^b[n]
inline std::vector<int> bfsk_amplitudes(const std::vector<int>& bits) {
    std::vector<int> a;
    a.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0 or 1");
        a.push_back(b ? -1 : 1);
    }
    return a;
}

// Continuous-phase complex baseband BFSK.
inline Eigen::VectorXcd bfsk_modulate(const std::vector<int>& bits, const BfskParams& p) {
    if (!(p.symbol_rate > 0.0) || !(p.sample_rate > 0.0)) throw std::invalid_argument("rates must be positive");
    if (p.modulation_index() < 0.5 - 1e-12) throw std::invalid_argument("modulation index below 0.5");
    if (p.sample_rate <= 2.0 * std::max(std::abs(p.f0), std::abs(p.f1)))
        throw std::invalid_argument("sample rate must exceed twice the highest tone");
    const double sps_d = p.sample_rate / p.symbol_rate;
    const long sps = std::lround(sps_d);
    if (std::abs(sps_d - static_cast<double>(sps)) > 1e-9 * sps_d)
        throw std::invalid_argument("sample rate must be an integer multiple of the symbol rate");
    bfsk_amplitudes(bits);
    Eigen::VectorXcd s(static_cast<Eigen::Index>(bits.size()) * sps);
    double phase = 0.0;
    Eigen::Index k = 0;
    for (int b : bits) {
        const double dphi = two_pi * (b ? p.f1 : p.f0) / p.sample_rate;
        for (long i = 0; i < sps; ++i) {
            s(k++) = std::polar(1.0, phase);
            phase = std::remainder(phase + dphi, two_pi);
        }
    }
    return s;
}

}  // namespace aperture_forge
