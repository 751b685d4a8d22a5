#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/fft.hpp"
#include "../core/grid.hpp"
#include "../core/random.hpp"
#include "../waveforms/lfm.hpp"

namespace aperture_forge {

// Point scatterer: along-track position x, slant range at closest approach r.
struct Scatterer {
    double x = 0.0;
    double r = 0.0;
    cplx amplitude{1.0, 0.0};
};

struct SarScene {
    std::vector<Scatterer> scatterers;
};

// Straight-line stripmap collection, platform on the x axis, broadside looking.
struct SarParams {
    double carrier = 10e9;          // Hz
    LfmChirp chirp{0.4e-6, 150e6};  // baseband pulse
    double sample_rate = 300e6;     // fast-time rate
    double prf = 400.0;             // Hz
    double velocity = 100.0;        // m/s
    Eigen::Index pulses = 64;
    Eigen::Index samples = 256;
    double near_range = 480.0;      // range of the first fast-time sample, m
    std::optional<double> beam_half_angle;  // a(t, r) = 1 inside, 0 outside
    double noise_sigma = 0.0;       // complex noise standard deviation per sample

    double wavelength() const { return speed_of_light / carrier; }
    double window_start() const { return 2.0 * near_range / speed_of_light; }
    double slow_time(Eigen::Index m) const {
        return (static_cast<double>(m) - 0.5 * static_cast<double>(pulses - 1)) / prf;
    }
    double platform_x(Eigen::Index m) const { return velocity * slow_time(m); }
    double fast_time(Eigen::Index n) const { return window_start() + static_cast<double>(n) / sample_rate; }
    double along_track_spacing() const { return velocity / prf; }
    double aperture_length() const { return velocity * static_cast<double>(pulses) / prf; }
    double range_bin() const { return speed_of_light / (2.0 * sample_rate); }

    void validate() const {
        chirp.validate();
        if (!(carrier > 0.0) || !(sample_rate > 0.0) || !(prf > 0.0))
            throw std::invalid_argument("carrier, sample rate and PRF must be positive");
        if (!(velocity >= 0.0)) throw std::invalid_argument("velocity must be non-negative");
        if (pulses < 2 || samples < 2) throw std::invalid_argument("need at least 2 pulses and 2 samples");
        if (sample_rate < std::abs(chirp.bandwidth)) throw std::invalid_argument("fast-time rate below chirp bandwidth");
        if (!(near_range > 0.0)) throw std::invalid_argument("near range must be positive");
        if (fast_time(samples - 1) >= 1.0 / prf)
            throw std::invalid_argument("receive window exceeds the pulse repetition interval");
        if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
    }
};

// data(n, m): fast-time sample n of pulse m. axis0 is fast time (s), axis1 slow time (s).
struct PhaseHistory {
    ComplexGrid data;
    SarParams params;
};

inline double slant_range(const SarParams& p, Eigen::Index m, double x, double r) {
    const double dx = x - p.platform_x(m);
    return std::sqrt(r * r + dx * dx);
}

inline bool illuminated(const SarParams& p, Eigen::Index m, double x, double r) {
    if (!p.beam_half_angle) return true;
    return std::abs(std::atan2(x - p.platform_x(m), r)) <= *p.beam_half_angle;
}

// Stop-and-hop model y = a s(tau - 2R/c) exp(-j 4 pi R / lambda) plus complex Gaussian noise.
inline PhaseHistory simulate_phase_history(const SarScene& scene, const SarParams& p, std::uint64_t seed) {
    p.validate();
    PhaseHistory ph;
    ph.params = p;
    ph.data = ComplexGrid(p.samples, p.pulses, {p.window_start(), 1.0 / p.sample_rate, "s"},
                          {p.slow_time(0), 1.0 / p.prf, "s"});
    const double half = 0.5 * p.chirp.duration;
    const double t_first = p.fast_time(0), t_last = p.fast_time(p.samples - 1);
    const double lam = p.wavelength();
    for (const auto& s : scene.scatterers) {
        if (!(s.r > 0.0)) throw std::invalid_argument("scatterer range must be positive");
        for (Eigen::Index m = 0; m < p.pulses; ++m) {
            const double R = slant_range(p, m, s.x, s.r);
            const double td = 2.0 * R / speed_of_light;
            if (td - half < t_first || td + half > t_last)
                throw std::invalid_argument("scatterer echo falls outside the receive window");
            if (!illuminated(p, m, s.x, s.r)) continue;
            const cplx carrier_phase = s.amplitude * std::polar(1.0, -4.0 * pi * R / lam);
            const auto n0 = static_cast<Eigen::Index>(std::floor((td - half - t_first) * p.sample_rate));
            const auto n1 = static_cast<Eigen::Index>(std::ceil((td + half - t_first) * p.sample_rate));
            for (Eigen::Index n = std::max<Eigen::Index>(0, n0); n <= std::min(p.samples - 1, n1); ++n)
                ph.data.data(n, m) += carrier_phase * p.chirp.value(p.fast_time(n) - td);
        }
    }
    if (p.noise_sigma > 0.0) {
        Rng rng(seed);
        for (Eigen::Index m = 0; m < p.pulses; ++m)
            for (Eigen::Index n = 0; n < p.samples; ++n)
                ph.data.data(n, m) += complex_gaussian(rng, p.noise_sigma * p.noise_sigma);
    }
    return ph;
}

// Matched-filter spectrum conj(H(f)) of the reference chirp centred on sample 0, length nfft.
inline std::vector<cplx> range_reference_spectrum(const SarParams& p, Eigen::Index nfft) {
    std::vector<cplx> h(static_cast<size_t>(nfft), cplx{});
    const auto half = static_cast<Eigen::Index>(std::floor(0.5 * p.chirp.duration * p.sample_rate));
    if (2 * half + 1 > nfft) throw std::invalid_argument("FFT too short for the reference chirp");
    for (Eigen::Index k = -half; k <= half; ++k)
        h[static_cast<size_t>((k + nfft) % nfft)] = p.chirp.value(static_cast<double>(k) / p.sample_rate);
    auto H = fft::forward(h);
    for (auto& v : H) v = std::conj(v);
    return H;
}

// Range-compressed pulses, same sampling as the raw data.
inline Eigen::MatrixXcd range_compress(const PhaseHistory& ph) {
    const auto& p = ph.params;
    const Eigen::Index nfft = p.samples + static_cast<Eigen::Index>(std::ceil(p.chirp.duration * p.sample_rate)) + 1;
    const auto H = range_reference_spectrum(p, nfft);
    Eigen::MatrixXcd out(p.samples, p.pulses);
    fft::cvec col(static_cast<size_t>(nfft));
    for (Eigen::Index m = 0; m < p.pulses; ++m) {
        std::fill(col.begin(), col.end(), cplx{});
        for (Eigen::Index n = 0; n < p.samples; ++n) col[static_cast<size_t>(n)] = ph.data.data(n, m);
        auto X = fft::forward(col);
        for (size_t k = 0; k < X.size(); ++k) X[k] *= H[k];
        const auto y = fft::inverse(X);
        for (Eigen::Index n = 0; n < p.samples; ++n) out(n, m) = y[static_cast<size_t>(n)];
    }
    return out;
}

}  // namespace aperture_forge
