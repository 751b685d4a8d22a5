#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

// s(t) = A rect(t/T) exp(j pi K t^2), K = B/T. A negative bandwidth gives a down-chirp.
struct LfmChirp {
    double duration = 1e-6;   // T, s
    double bandwidth = 1e6;   // B, Hz (sign sets sweep direction)
    double carrier = 0.0;     // fc, Hz
    double amplitude = 1.0;
    bool baseband = true;

    double rate() const { return bandwidth / duration; }

    void validate() const {
        if (!(duration > 0.0) || !std::isfinite(duration))
            throw std::invalid_argument("chirp duration must be positive");
        if (!std::isfinite(bandwidth) || bandwidth == 0.0)
            throw std::invalid_argument("chirp bandwidth must be non-zero");
        if (!std::isfinite(amplitude) || !std::isfinite(carrier))
            throw std::invalid_argument("non-finite chirp parameter");
    }

    cplx value(double t) const {
        if (std::abs(t) > 0.5 * duration) return {0.0, 0.0};
        double ph = pi * rate() * t * t;
        if (!baseband) ph += two_pi * carrier * t;
        return std::polar(amplitude, ph);
    }
};

// Sample times t_n = (n - (N-1)/2) / fs with N = round(T fs); odd N includes t = 0.
inline Eigen::VectorXd lfm_sample_times(const LfmChirp& c, double fs) {
    const Eigen::Index n = static_cast<Eigen::Index>(std::llround(c.duration * fs));
    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) t(i) = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) / fs;
    return t;
}

inline Eigen::VectorXcd sample_lfm(const LfmChirp& c, double fs) {
    c.validate();
    if (!(fs > 0.0) || !std::isfinite(fs)) throw std::invalid_argument("sample rate must be positive");
    const double need = c.baseband ? 2.0 * std::abs(c.bandwidth)
                                   : 2.0 * (std::abs(c.carrier) + 0.5 * std::abs(c.bandwidth));
    if (fs < need) throw std::invalid_argument("sample rate below the Nyquist requirement");
    const Eigen::VectorXd t = lfm_sample_times(c, fs);
    if (t.size() < 2) throw std::invalid_argument("chirp shorter than two samples");
    Eigen::VectorXcd s(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) s(i) = c.value(t(i));
    return s;
}

}  // namespace aperture_forge
