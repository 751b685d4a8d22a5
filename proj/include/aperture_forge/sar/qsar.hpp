#pragma once

#include <cmath>
#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

struct QsarBudget {
    double power = 1.0;             // P, W (classical) or M hbar omega
    double gain = 1.0;              // G, linear
    double wavelength = 0.03;       // m
    double rcs = 1.0;               // sigma_0, m^2
    double range_resolution = 1.0;  // delta_r, m
    double range = 1e3;             // R, m
    double noise_temperature = 290.0;
    double noise_figure = 1.0;      // linear
    double atmospheric_loss = 1.0;  // linear
    double platform_speed = 100.0;  // m/s
    double grazing = 0.5235987755982988;  // theta, rad

    void validate() const {
        if (!(power > 0.0) || !(gain > 0.0) || !(wavelength > 0.0) || !(rcs > 0.0) || !(range_resolution > 0.0) ||
            !(range > 0.0) || !(noise_temperature > 0.0) || !(noise_figure > 0.0) || !(atmospheric_loss > 0.0) ||
            !(platform_speed > 0.0))
            throw std::invalid_argument("QSAR budget terms must be positive");
        if (!(grazing > 0.0) || !(grazing < 0.5 * pi)) throw std::invalid_argument("theta must lie in (0, 90) degrees");
    }
};

// Transmit power carried by M photons per second at angular frequency omega.
inline double photon_power(double photons_per_second, double omega) { return photons_per_second * hbar * omega; }

struct QsarSnr {
    double linear = 0.0;
    double db = 0.0;
    bool clear_image = false;  // at least 5 dB
};

inline QsarSnr qsar_snr(const QsarBudget& b) {
    b.validate();
    const double four_pi3 = std::pow(4.0 * pi, 3);
    const double num = b.power * b.gain * b.gain * std::pow(b.wavelength, 3) * b.rcs * b.range_resolution;
    const double den = 2.0 * four_pi3 * std::pow(b.range, 3) * boltzmann * b.noise_temperature * b.noise_figure *
                       b.atmospheric_loss * b.platform_speed * std::cos(b.grazing);
    QsarSnr s;
    s.linear = num / den;
    s.db = 10.0 * std::log10(s.linear);
    s.clear_image = s.db >= 5.0;
    return s;
}

struct QsarErrorRates {
    double classical = 0.5;  // 0.5 exp(-SNR / 4)
    double quantum = 0.5;    // 0.5 exp(-SNR)
};

inline QsarErrorRates qsar_error_rates(double snr_linear) {
    if (!(snr_linear >= 0.0)) throw std::invalid_argument("SNR must be non-negative (linear)");
    return {0.5 * std::exp(-snr_linear / 4.0), 0.5 * std::exp(-snr_linear)};
}

enum class SnrUnit { linear, db };

inline QsarErrorRates qsar_error_rates(double snr, SnrUnit unit) {
    return qsar_error_rates(unit == SnrUnit::db ? from_db10(snr) : snr);
}

}  // namespace aperture_forge
