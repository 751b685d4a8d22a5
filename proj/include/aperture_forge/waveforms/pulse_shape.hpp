#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "../core/constants.hpp"

namespace aperture_forge {

enum class PulseShape { sinc, raised_cosine, root_raised_cosine };

inline double sinc_pi(double x) { return x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x); }

// Pulse value at time t for symbol rate f_sy and roll-off beta.
// The root-raised-cosine pulse carries sqrt(f_sy) so that rrc * rrc = rc under integration in t.
inline double pulse_shape_value(PulseShape shape, double t, double f_sy, double beta) {
    const double x = t * f_sy;
    switch (shape) {
        case PulseShape::sinc:
            return sinc_pi(x);
        case PulseShape::raised_cosine: {
            const double den = 1.0 - 4.0 * beta * beta * x * x;
            if (std::abs(den) < 1e-10) return 0.25 * pi * sinc_pi(1.0 / (2.0 * beta));
            return sinc_pi(x) * std::cos(pi * beta * x) / den;
        }
        case PulseShape::root_raised_cosine: {
            const double g = std::sqrt(f_sy);
            if (x == 0.0) return g * (1.0 - beta + 4.0 * beta / pi);
            const double q = 4.0 * beta * x;
            if (std::abs(std::abs(q) - 1.0) < 1e-10) {
                const double a = pi / (4.0 * beta);
                return g * beta / std::sqrt(2.0) *
                       ((1.0 + 2.0 / pi) * std::sin(a) + (1.0 - 2.0 / pi) * std::cos(a));
            }
            const double num = std::sin(pi * x * (1.0 - beta)) + q * std::cos(pi * x * (1.0 + beta));
            return g * num / (pi * x * (1.0 - q * q));
        }
    }
    return 0.0;
}

// Impulse response sampled at t_n = (n - span * sps) / (sps f_sy), n = 0 .. 2 span sps.
inline Eigen::VectorXd pulse_shape_ir(PulseShape shape, double f_sy, double beta, int samples_per_symbol,
                                      int span_symbols) {
    if (!(f_sy > 0.0)) throw std::invalid_argument("symbol rate must be positive");
    if (samples_per_symbol < 1 || span_symbols < 1) throw std::invalid_argument("bad sampling");
    if (shape != PulseShape::sinc && (!(beta > 0.0) || beta > 1.0))
        throw std::invalid_argument("roll-off must lie in (0, 1]");
    const Eigen::Index half = static_cast<Eigen::Index>(span_symbols) * samples_per_symbol;
    Eigen::VectorXd h(2 * half + 1);
    for (Eigen::Index n = 0; n < h.size(); ++n) {
        const double t = static_cast<double>(n - half) / (samples_per_symbol * f_sy);
        h(n) = pulse_shape_value(shape, t, f_sy, beta);
    }
    return h;
}

}  // namespace aperture_forge
