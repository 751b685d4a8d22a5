#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace aperture_forge {

struct AdcReport {
    int bits = 0;
    double full_scale = 1.0;            // V_FS, peak-to-peak
    double lsb = 0.0;                   // V_FS / 2^B
    double quantization_noise = 0.0;    // LSB^2 / 12
    double snr_ideal_db = 0.0;          // 6.02 B + 1.76
    double snr_exact_db = 0.0;          // 10 log10(1.5 * 4^B)
    std::optional<double> enob;         // from a measured SNDR
    bool low_resolution_caveat = false; // ideal model is loose below 4 bits
};

inline AdcReport adc_metrics(int bits, double full_scale, std::optional<double> sndr_db = std::nullopt) {
    if (bits < 1) throw std::invalid_argument("ADC needs at least one bit");
    if (!(full_scale > 0.0)) throw std::invalid_argument("full scale must be positive");
    AdcReport r;
    r.bits = bits;
    r.full_scale = full_scale;
    r.lsb = full_scale / std::ldexp(1.0, bits);
    r.quantization_noise = r.lsb * r.lsb / 12.0;
    r.snr_ideal_db = 6.02 * bits + 1.76;
    r.snr_exact_db = 10.0 * std::log10(1.5) + 20.0 * bits * std::log10(2.0);
    if (sndr_db) r.enob = (*sndr_db - 1.76) / 6.02;
    r.low_resolution_caveat = bits < 4;
    return r;
}

// Mid-rise uniform quantiser over [-V_FS/2, V_FS/2).
inline Eigen::VectorXd adc_quantize(const Eigen::VectorXd& x, int bits, double full_scale) {
    const double lsb = adc_metrics(bits, full_scale).lsb;
    const double top = std::ldexp(1.0, bits - 1);
    Eigen::VectorXd y(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n) {
        const double level = std::clamp(std::floor(x(n) / lsb), -top, top - 1.0);
        y(n) = (level + 0.5) * lsb;
    }
    return y;
}

}  // namespace aperture_forge
