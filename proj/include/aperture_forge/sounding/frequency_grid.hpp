#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

// Tones f_start + s df, s = 0 .. S-1.
struct FrequencyGrid {
    double f_start = 26.5e9;
    double f_stop = 40e9;
    double df = 10e6;

    Eigen::Index size() const {
        validate();
        return static_cast<Eigen::Index>(std::llround((f_stop - f_start) / df)) + 1;
    }
    double operator[](Eigen::Index s) const { return f_start + static_cast<double>(s) * df; }
    double bandwidth() const { return f_stop - f_start; }
    double unambiguous_delay() const { return 1.0 / df; }

    void validate() const {
        if (!(f_start > 0.0) || !(f_stop >= f_start) || !(df > 0.0))
            throw std::invalid_argument("frequency grid needs 0 < f_start <= f_stop and df > 0");
        const double steps = (f_stop - f_start) / df;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
            throw std::invalid_argument("frequency span is not an integer number of steps");
    }
};

struct SamplingReport {
    Eigen::Index tones = 0;
    double delay_resolution = 0.0;  // 1 / B, s
    double range_resolution = 0.0;  // c / B, m
    double t_dur = 0.0;             // 1 / df, s
    double max_range = 0.0;         // last delay bin c (S - 1) / (S df), m
    double ratio = 0.0;             // f_max / B
    int q = 0;                      // nearest integer to the ratio
    bool bandpass_ok = false;
};

// Sampling the delay profile at f_sam = B is alias-free when f_max / B is within
// `tolerance` of an integer.
inline SamplingReport sampling_checks(const FrequencyGrid& g, double f_max, double tolerance = 0.05) {
    g.validate();
    if (!(f_max > 0.0)) throw std::invalid_argument("f_max must be positive");
    SamplingReport r;
    r.tones = g.size();
    const double B = g.bandwidth();
    if (!(B > 0.0)) throw std::invalid_argument("single-tone grid has no bandwidth");
    r.delay_resolution = 1.0 / B;
    r.range_resolution = speed_of_light / B;
    r.t_dur = 1.0 / g.df;
    const double s = static_cast<double>(r.tones);
    r.max_range = speed_of_light * (s - 1.0) / (s * g.df);
    r.ratio = f_max / B;
    r.q = static_cast<int>(std::llround(r.ratio));
    const double f_sam = B;
    r.bandpass_ok = r.q >= 1 && f_sam >= B && std::abs(r.ratio - r.q) <= tolerance;
    return r;
}

// Line-of-sight detection range, R^2 = P G A / (4 pi S_min).
inline double friis_range(double p_t, double gain, double a_e, double s_min) {
    if (!(p_t > 0.0) || !(gain > 0.0) || !(a_e > 0.0) || !(s_min > 0.0))
        throw std::invalid_argument("Friis inputs must be positive");
    return std::sqrt(p_t * gain * a_e / (4.0 * pi * s_min));
}

// Scattered path with R1 = R2 = R: R^4 = P G A sigma / ((4 pi)^2 S_min).
inline double friis_range(double p_t, double gain, double a_e, double s_min, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("backscatter area must be positive");
    const double r2 = friis_range(p_t, gain, a_e, s_min);
    return std::pow(r2 * r2 * sigma / (4.0 * pi), 0.25);
}

struct TwoRay {
    double beta2 = 1.0;  // |1 + rho e^{j phi}|^2
    double theta = 0.0;  // rad
};

inline TwoRay two_ray_path_loss(double rho, double phi) {
    if (!(rho >= 0.0)) throw std::invalid_argument("reflection magnitude must be non-negative");
    const double re = 1.0 + rho * std::cos(phi), im = rho * std::sin(phi);
    return {1.0 + 2.0 * rho * std::cos(phi) + rho * rho, std::atan2(im, re)};
}

}  // namespace aperture_forge
