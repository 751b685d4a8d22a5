#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "../core/constants.hpp"
#include "../core/fft.hpp"
#include "../core/random.hpp"

namespace aperture_forge {

// Illumination offset nu_k in spectral bins of the high-resolution grid (kx along columns, ky along rows).
struct FpOffset {
    int kx = 0;
    int ky = 0;
    double radius() const { return std::hypot(static_cast<double>(kx), static_cast<double>(ky)); }
};

// Object on an N x N high-resolution grid, images on an M x M sensor grid. The coherent transfer
// function H is a disc of radius `pupil_radius` bins centred in the M x M low-resolution band.
struct FpSystem {
    Eigen::Index hi = 64;
    Eigen::Index lo = 32;
    double pupil_radius = 8.0;
    std::vector<FpOffset> offsets{{0, 0}};
    double min_overlap = 0.6;  // nearest-neighbour pupil overlap below this flags the recovery

    void validate() const {
        if (hi < 2 || lo < 2 || lo > hi) throw std::invalid_argument("need 2 <= sensor grid <= object grid");
        if (!(pupil_radius > 0.0) || pupil_radius >= 0.5 * static_cast<double>(lo))
            throw std::invalid_argument("pupil must lie strictly inside the low-resolution band");
        if (offsets.empty()) throw std::invalid_argument("need at least one illumination");
        for (const auto& o : offsets)
            if (std::abs(o.kx) + lo / 2 > hi / 2 || std::abs(o.ky) + lo / 2 > hi / 2)
                throw std::invalid_argument("illumination offset pushes the pupil window off the object spectrum");
    }
    Eigen::ArrayXXd pupil() const {
        Eigen::ArrayXXd H = Eigen::ArrayXXd::Zero(lo, lo);
        const Eigen::Index c = lo / 2;
        for (Eigen::Index r = 0; r < lo; ++r)
            for (Eigen::Index q = 0; q < lo; ++q)
                if (std::hypot(static_cast<double>(r - c), static_cast<double>(q - c)) <= pupil_radius) H(r, q) = 1.0;
        return H;
    }
    // pupil radius + largest offset
    double synthetic_radius() const {
        double m = 0.0;
        for (const auto& o : offsets) m = std::max(m, o.radius());
        return pupil_radius + m;
    }
};

// Optical parameters to grid units: bins of 1 / (N pixel) cycles per metre. The pupil radius is
// NA / lambda and each LED sits at nu_k = (sin theta_x, sin theta_y) / lambda, rounded to a bin.
inline FpSystem fp_system_from_optics(Eigen::Index hi, Eigen::Index lo, double pixel, double wavelength, double na,
                                      const std::vector<std::pair<double, double>>& led_angles) {
    if (!(pixel > 0.0) || !(wavelength > 0.0) || !(na > 0.0) || na > 1.0) throw std::invalid_argument("bad optical parameters");
    FpSystem s;
    s.hi = hi;
    s.lo = lo;
    const double bin = 1.0 / (static_cast<double>(hi) * pixel);
    s.pupil_radius = na / wavelength / bin;
    s.offsets.clear();
    for (const auto& [tx, ty] : led_angles)
        s.offsets.push_back({static_cast<int>(std::lround(std::sin(tx) / wavelength / bin)), static_cast<int>(std::lround(std::sin(ty) / wavelength / bin))});
    s.validate();
    return s;
}

// Square grid of (2 half + 1)^2 LEDs at `step` bins.
inline std::vector<FpOffset> fp_led_grid(int half, int step) {
    if (half < 0 || step < 1) throw std::invalid_argument("bad LED grid");
    std::vector<FpOffset> out;
    for (int j = -half; j <= half; ++j)
        for (int i = -half; i <= half; ++i) out.push_back({i * step, j * step});
    return out;
}

// Area fraction shared by two discs of radius r whose centres are d apart.
inline double disc_overlap(double d, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (d >= 2.0 * r) return 0.0;
    const double a = 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
    return a / (pi * r * r);
}

// Smallest nearest-neighbour overlap over all pupils (1 for a single illumination).
inline double fp_min_overlap(const FpSystem& s) {
    if (s.offsets.size() < 2) return 1.0;
    double worst = 1.0;
    for (size_t k = 0; k < s.offsets.size(); ++k) {
        double best = 0.0;
        for (size_t j = 0; j < s.offsets.size(); ++j) {
            if (j == k) continue;
            const double d = std::hypot(static_cast<double>(s.offsets[k].kx - s.offsets[j].kx), static_cast<double>(s.offsets[k].ky - s.offsets[j].ky));
            best = std::max(best, disc_overlap(d, s.pupil_radius));
        }
        worst = std::min(worst, best);
    }
    return worst;
}

// Centred spectrum U of u: zero frequency at (N/2, N/2).
inline Eigen::MatrixXcd fp_spectrum(const Eigen::MatrixXcd& u) { return fft::fftshift(fft::forward2(u)); }
inline Eigen::MatrixXcd fp_object(const Eigen::MatrixXcd& U) { return fft::inverse2(fft::ifftshift(U)); }

namespace detail {
// Top-left corner in the centred object spectrum of the window holding U(nu - nu_k) for nu in the sensor band.
inline std::pair<Eigen::Index, Eigen::Index> fp_window(const FpSystem& s, const FpOffset& o) {
    return {s.hi / 2 - s.lo / 2 - o.ky, s.hi / 2 - s.lo / 2 - o.kx};
}
// Low-resolution field from a centred M x M spectrum; the M^2 / N^2 factor keeps the on-axis image
// equal to the decimated object.
inline Eigen::MatrixXcd fp_field(const FpSystem& s, const Eigen::MatrixXcd& spec) {
    const double g = static_cast<double>(s.lo * s.lo) / static_cast<double>(s.hi * s.hi);
    return g * fft::inverse2(fft::ifftshift(spec));
}
inline Eigen::MatrixXcd fp_field_spectrum(const FpSystem& s, const Eigen::MatrixXcd& field) {
    const double g = static_cast<double>(s.hi * s.hi) / static_cast<double>(s.lo * s.lo);
    return g * fft::fftshift(fft::forward2(field));
}
}  // namespace detail

// Pupil-masked, shifted spectrum U(nu - nu_k) H(nu) on the sensor band.
inline Eigen::MatrixXcd fp_masked_spectrum(const FpSystem& s, const Eigen::MatrixXcd& U, size_t k) {
    if (k >= s.offsets.size()) throw std::invalid_argument("illumination index out of range");
    if (U.rows() != s.hi || U.cols() != s.hi) throw std::invalid_argument("object spectrum has the wrong size");
    const auto [r0, c0] = detail::fp_window(s, s.offsets[k]);
    return U.block(r0, c0, s.lo, s.lo).array() * s.pupil().cast<cplx>();
}

// I_k = |FT^-1[U(nu - nu_k) H(nu)]|^2 for object u (N x N), optional additive Gaussian noise clipped at zero.
inline Eigen::MatrixXd fp_acquire(const FpSystem& s, const Eigen::MatrixXcd& u, size_t k, double noise_sigma = 0.0, std::uint64_t seed = 0) {
    s.validate();
    if (u.rows() != s.hi || u.cols() != s.hi) throw std::invalid_argument("object has the wrong size");
    Eigen::MatrixXd I = detail::fp_field(s, fp_masked_spectrum(s, fp_spectrum(u), k)).cwiseAbs2();
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        std::normal_distribution<double> g(0.0, noise_sigma);
        for (Eigen::Index i = 0; i < I.size(); ++i) I(i) = std::max(0.0, I(i) + g(rng));
    }
    return I;
}

inline std::vector<Eigen::MatrixXd> fp_acquire_all(const FpSystem& s, const Eigen::MatrixXcd& u, double noise_sigma = 0.0, std::uint64_t seed = 0) {
    std::vector<Eigen::MatrixXd> out;
    for (size_t k = 0; k < s.offsets.size(); ++k) out.push_back(fp_acquire(s, u, k, noise_sigma, seed + k));
    return out;
}

struct FpRecovery {
    Eigen::MatrixXcd object;    // N x N
    Eigen::MatrixXcd spectrum;  // centred
    std::vector<double> residual;  // sum_k |sqrt(I_k) - |psi_k||^2 before each sweep, plus the final value
    double min_overlap = 1.0;
    bool reliable = true;
};

// Sequential alternating projections, illuminations visited in order of increasing |nu_k|. The
// spectrum starts from the image closest to on-axis with zero phase.
inline FpRecovery fp_recover(const std::vector<Eigen::MatrixXd>& intensities, const FpSystem& s, int sweeps) {
    s.validate();
    if (intensities.size() != s.offsets.size()) throw std::invalid_argument("need one image per illumination");
    for (const auto& I : intensities)
        if (I.rows() != s.lo || I.cols() != s.lo || (I.array() < 0.0).any()) throw std::invalid_argument("images must be nonnegative and sensor-sized");
    if (sweeps < 0) throw std::invalid_argument("sweep count must be nonnegative");

    std::vector<size_t> order(s.offsets.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return s.offsets[a].radius() < s.offsets[b].radius(); });

    const Eigen::ArrayXXd H = s.pupil();
    const Eigen::ArrayXXcd Hc = H.cast<cplx>();
    std::vector<Eigen::MatrixXd> amp;
    for (const auto& I : intensities) amp.push_back(I.cwiseSqrt());

    FpRecovery out;
    out.min_overlap = fp_min_overlap(s);
    out.reliable = out.min_overlap >= s.min_overlap;
    out.spectrum = Eigen::MatrixXcd::Zero(s.hi, s.hi);
    {
        const auto [r0, c0] = detail::fp_window(s, s.offsets[order[0]]);
        out.spectrum.block(r0, c0, s.lo, s.lo) = (detail::fp_field_spectrum(s, amp[order[0]].cast<cplx>()).array() * Hc).matrix();
    }
    auto residual = [&]() {
        double acc = 0.0;
        for (size_t k = 0; k < s.offsets.size(); ++k) {
            const auto [r0, c0] = detail::fp_window(s, s.offsets[k]);
            const Eigen::MatrixXcd spec = (out.spectrum.block(r0, c0, s.lo, s.lo).array() * Hc).matrix();
            acc += (amp[k] - detail::fp_field(s, spec).cwiseAbs()).squaredNorm();
        }
        return acc;
    };
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        out.residual.push_back(residual());
        for (const size_t k : order) {
            const auto [r0, c0] = detail::fp_window(s, s.offsets[k]);
            auto win = out.spectrum.block(r0, c0, s.lo, s.lo);
            Eigen::MatrixXcd psi = detail::fp_field(s, (win.array() * Hc).matrix());
            for (Eigen::Index i = 0; i < psi.size(); ++i) {
                const double a = std::abs(psi(i));
                psi(i) = a > 0.0 ? amp[k](i) * (psi(i) / a) : cplx{amp[k](i), 0.0};
            }
            const Eigen::ArrayXXcd upd = detail::fp_field_spectrum(s, psi).array();
            win = (win.array() * (1.0 - H).cast<cplx>() + upd * Hc).matrix();
        }
    }
    out.residual.push_back(residual());
    out.object = fp_object(out.spectrum);
    return out;
}

// Largest distance (bins) from the spectrum centre of a bin with |U| > threshold max|U|.
inline double fp_measured_support_radius(const Eigen::MatrixXcd& spectrum, double threshold = 1e-12) {
    const double peak = spectrum.cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    const Eigen::Index c0 = spectrum.rows() / 2, c1 = spectrum.cols() / 2;
    double r = 0.0;
    for (Eigen::Index i = 0; i < spectrum.rows(); ++i)
        for (Eigen::Index j = 0; j < spectrum.cols(); ++j)
            if (std::abs(spectrum(i, j)) > threshold * peak) r = std::max(r, std::hypot(static_cast<double>(i - c0), static_cast<double>(j - c1)));
    return r;
}

// Union of the shifted pupils on the centred object spectrum.
inline Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> fp_covered_band(const FpSystem& s) {
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> cov = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(s.hi, s.hi, false);
    const Eigen::ArrayXXd H = s.pupil();
    for (const auto& o : s.offsets) {
        const auto [r0, c0] = detail::fp_window(s, o);
        for (Eigen::Index r = 0; r < s.lo; ++r)
            for (Eigen::Index q = 0; q < s.lo; ++q)
                if (H(r, q) > 0.0) cov(r0 + r, c0 + q) = true;
    }
    return cov;
}

// min over alpha of |Uh - e^{j alpha} U| / |U| restricted to a mask.
inline double fp_spectrum_error(const Eigen::MatrixXcd& Uh, const Eigen::MatrixXcd& U, const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& mask) {
    if (Uh.rows() != U.rows() || Uh.cols() != U.cols() || mask.rows() != U.rows() || mask.cols() != U.cols())
        throw std::invalid_argument("spectra and mask differ in size");
    cplx c = 0.0;
    double nu = 0.0;
    for (Eigen::Index i = 0; i < U.size(); ++i)
        if (mask(i)) {
            c += std::conj(U(i)) * Uh(i);
            nu += std::norm(U(i));
        }
    if (nu == 0.0) throw std::invalid_argument("reference spectrum is zero on the mask");
    const cplx ph = std::abs(c) > 0.0 ? c / std::abs(c) : cplx{1.0, 0.0};
    double e = 0.0;
    for (Eigen::Index i = 0; i < U.size(); ++i)
        if (mask(i)) e += std::norm(Uh(i) - ph * U(i));
    return std::sqrt(e / nu);
}

}  // namespace aperture_forge
