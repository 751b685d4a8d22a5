#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "../core.hpp"
#include "../waveforms.hpp"
#include "context.hpp"

namespace aperture_forge::cli {

namespace detail {

// Largest |h| at nonzero multiples of sps from the centre tap, relative to the centre.
inline double symbol_isi(const Eigen::VectorXd& h, Eigen::Index sps) {
    const Eigen::Index c = (h.size() - 1) / 2;
    double worst = 0.0;
    for (Eigen::Index k = sps; c + k < h.size(); k += sps) worst = std::max({worst, std::abs(h(c + k)), std::abs(h(c - k))});
    return worst / std::abs(h(c));
}

inline Eigen::VectorXd convolve(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i, b.size()) += a(i) * b;
    return out;
}

// Weak-target peak over the largest residual in [lo, hi] away from both targets, dB.
inline double weak_over_residual_db(const Eigen::VectorXcd& p, Eigen::Index strong, Eigen::Index weak, Eigen::Index lo, Eigen::Index hi) {
    double res = 0.0;
    for (Eigen::Index l = std::max<Eigen::Index>(lo, 0); l <= std::min(hi, p.size() - 1); ++l) {
        if (std::abs(l - strong) <= 1 || std::abs(l - weak) <= 1) continue;
        res = std::max(res, std::abs(p(l)));
    }
    return db20(std::abs(p(weak)) / res);
}

}  // namespace detail

inline Scenario waveform_ambiguity_scenario() {
    ScenarioSpec s{"waveform-ambiguity", "waveforms", true,
                   {num_param("pulse_duration", 4e-6), num_param("bandwidth", 5e6), num_param("sample_rate", 100e6), int_param("delay_points", 201),
                    int_param("doppler_points", 201), num_param("doppler_span", 2.0), int_param("code_length", 32), int_param("profile_length", 128),
                    int_param("strong_index", 50), int_param("weak_index", 62), num_param("weak_db", -40.0), num_param("noise_variance", 1e-8),
                    int_param("residual_halfwidth", 28), int_param("rmmse_iterations", 3), num_param("symbol_rate", 1e6), num_param("rolloff", 0.35),
                    int_param("samples_per_symbol", 8), int_param("span_symbols", 8), num_param("bfsk_f0", -250e3), num_param("bfsk_f1", 250e3),
                    num_param("iq_sample_rate", 32e6), num_param("carrier", 8e6), num_param("carrier_phase", 0.3), num_param("phase_error_deg", 20.0),
                    num_param("iq_cutoff", 2e6), int_param("bits", 64), num_param("dynamic_range_db", 40.0)},
                   {"waveforms.sample_lfm", "waveforms.matched_filter", "waveforms.ambiguity_surface", "waveforms.lfm_ambiguity_closed_form",
                    "waveforms.rmmse_compress", "waveforms.pulse_shape_ir", "waveforms.bfsk_modulate", "waveforms.iq_modulate",
                    "waveforms.iq_demodulate"}};
    return {s, [](ScenarioContext& c) {
                const LfmChirp chirp{c.positive("pulse_duration"), c.positive("bandwidth")};
                const double fs = c.positive("sample_rate");
                const double dr_db = c.positive("dynamic_range_db");
                auto& m = c.metrics;
                Rng rng(c.seed());

                // LFM: matched filter and ambiguity against the closed form
                const Eigen::VectorXcd u = sample_lfm(chirp, fs);
                const auto mf = matched_filter(u, u);
                const Eigen::Index mpk = argmax_abs_vec(mf.values);
                m.set("mf_peak_lag", mf.lag_of(mpk));
                m.set("mf_width_3db_s", lobe_width(Eigen::VectorXd(mf.values.cwiseAbs2()), mpk) / fs);
                m.set("mf_width_expected_s", 0.886 / chirp.bandwidth);

                const Eigen::Index nd = c.count("delay_points", 3, 100001), nf = c.count("doppler_points", 3, 100001);
                const double span = c.positive("doppler_span");
                const double tstep = std::round(2.0 * chirp.duration * fs / static_cast<double>(nd / 2 * 2)) / fs;  // delays span +-T on the sample grid
                if (!(tstep > 0.0)) c.invalid("delay_points", "delay grid finer than one sample");
                std::vector<double> tau, fd;
                for (Eigen::Index k = -(nd / 2); k <= nd / 2; ++k) tau.push_back(static_cast<double>(k) * tstep);
                for (Eigen::Index q = -(nf / 2); q <= nf / 2; ++q) fd.push_back(static_cast<double>(q) * span * chirp.bandwidth / static_cast<double>(nf / 2));
                const auto A = ambiguity_surface(u, fs, tau, fd);
                double err = 0.0;
                Eigen::MatrixXd closed(A.values.rows(), A.values.cols());
                for (Eigen::Index i = 0; i < closed.rows(); ++i)
                    for (Eigen::Index q = 0; q < closed.cols(); ++q) {
                        closed(i, q) = lfm_ambiguity(chirp, tau[static_cast<size_t>(i)], fd[static_cast<size_t>(q)]);
                        err = std::max(err, std::abs(A.values(i, q) - closed(i, q)));
                    }
                m.set("ambiguity_max_abs_error", err);
                m.set("ambiguity_origin", A.values(nd / 2, nf / 2));
                m.set("ambiguity_grid", std::vector<long long>{static_cast<long long>(tau.size()), static_cast<long long>(fd.size())});
                c.out.image("ambiguity", A.values, dr_db, ImageScale::power);
                c.out.image("ambiguity_closed_form", closed, dr_db, ImageScale::power);

                // two targets through a random-phase code: matched filter versus RMMSE
                const Eigen::Index n = c.count("code_length", 2, 4096), len = c.count("profile_length", 4, 1 << 16);
                const Eigen::Index is = c.count("strong_index", 0, len - 1), iw = c.count("weak_index", 0, len - 1);
                if (is == iw) c.invalid("weak_index", "the two targets must occupy different cells");
                const double nv = c.cfg.num("noise_variance");
                if (nv < 0.0) c.invalid("noise_variance", "\"noise_variance\" must be non-negative");
                Eigen::VectorXcd code(n);
                for (Eigen::Index i = 0; i < n; ++i) code(i) = random_phasor(rng);
                Eigen::VectorXcd x = Eigen::VectorXcd::Zero(len);
                x(is) = 1.0;
                x(iw) = std::pow(10.0, c.cfg.num("weak_db") / 20.0) * random_phasor(rng);
                Eigen::VectorXcd y = Eigen::VectorXcd::Zero(len + n - 1);
                for (Eigen::Index l = 0; l < len; ++l) y.segment(l, n) += x(l) * code;
                if (nv > 0.0) y += complex_gaussian_vector(rng, y.size(), nv);
                RmmseOptions ro;
                ro.iterations = static_cast<int>(c.count("rmmse_iterations", 1, 100));
                const auto rr = rmmse_compress(y, code, ro);
                const Eigen::Index hw = c.count("residual_halfwidth", 2, len);
                const Eigen::Index lo = std::min(is, iw) - hw, hi = std::max(is, iw) + hw;
                m.set("mf_weak_over_residual_db", detail::weak_over_residual_db(rr.matched_filter, is, iw, lo, hi));
                m.set("rmmse_weak_over_residual_db", detail::weak_over_residual_db(rr.profile, is, iw, lo, hi));
                m.set("rmmse_diagonal_loads", rr.diagonal_loads);
                Eigen::VectorXd mfd(len), rmd(len);
                for (Eigen::Index l = 0; l < len; ++l) {
                    mfd(l) = db20(std::max(std::abs(rr.matched_filter(l)), 1e-300));
                    rmd(l) = db20(std::max(std::abs(rr.profile(l)), 1e-300));
                }
                c.out.csv("range_profiles.csv", csv_columns({"cell", "matched_filter_db", "rmmse_db"},
                                                            {Eigen::VectorXd::LinSpaced(len, 0.0, static_cast<double>(len - 1)), mfd, rmd}));

                // pulse shaping: zero crossings at symbol instants
                const double fsy = c.positive("symbol_rate"), beta = c.positive("rolloff");
                const int sps = static_cast<int>(c.count("samples_per_symbol", 1, 1024)), spn = static_cast<int>(c.count("span_symbols", 1, 1024));
                const Eigen::VectorXd hs = pulse_shape_ir(PulseShape::sinc, fsy, beta, sps, spn);
                const Eigen::VectorXd hrc = pulse_shape_ir(PulseShape::raised_cosine, fsy, beta, sps, spn);
                const Eigen::VectorXd hrrc = pulse_shape_ir(PulseShape::root_raised_cosine, fsy, beta, sps, spn);
                m.set("sinc_isi", detail::symbol_isi(hs, sps));
                m.set("raised_cosine_isi", detail::symbol_isi(hrc, sps));
                m.set("rrc_cascade_isi", detail::symbol_isi(detail::convolve(hrrc, hrrc), sps));
                const Eigen::VectorXd tt = Eigen::VectorXd::LinSpaced(hs.size(), -static_cast<double>(spn), static_cast<double>(spn));
                c.out.csv("pulse_shapes.csv", csv_columns({"t_symbols", "sinc", "raised_cosine", "root_raised_cosine"}, {tt, hs, hrc, hrrc}));

                // BFSK through an I/Q modulator and demodulator
                const Eigen::Index nb = c.count("bits", 1, 1 << 20);
                std::vector<int> bits(static_cast<size_t>(nb));
                for (auto& b : bits) b = static_cast<int>(rng() & 1U);
                const double fiq = c.positive("iq_sample_rate");
                const BfskParams bp{c.cfg.num("bfsk_f0"), c.cfg.num("bfsk_f1"), fsy, fiq};
                const Eigen::VectorXcd z = bfsk_modulate(bits, bp);
                const auto spb = static_cast<Eigen::Index>(std::llround(fiq / fsy));
                m.set("bfsk_modulation_index", bp.modulation_index());
                m.set("bfsk_envelope_deviation", (z.cwiseAbs().array() - 1.0).abs().maxCoeff());
                Eigen::Index bit_errors = 0;
                for (Eigen::Index k = 0; k < nb; ++k) {
                    cplx c0 = 0.0, c1 = 0.0;
                    for (Eigen::Index i = 0; i < spb; ++i) {
                        const double t = static_cast<double>(i) / fiq;
                        c0 += z(k * spb + i) * std::polar(1.0, -two_pi * bp.f0 * t);
                        c1 += z(k * spb + i) * std::polar(1.0, -two_pi * bp.f1 * t);
                    }
                    bit_errors += (std::abs(c1) > std::abs(c0) ? 1 : 0) != bits[static_cast<size_t>(k)];
                }
                m.set("bfsk_bit_errors", bit_errors);

                const IqStream mb{z.real(), z.imag(), fiq};
                const double fc = c.positive("carrier"), th = c.cfg.num("carrier_phase");
                const Eigen::VectorXd r = iq_modulate(mb, fc, th);
                const IqDemodParams dp{fc, th, c.positive("iq_cutoff"), fsy};
                const Eigen::VectorXcd zr = iq_demodulate(r, fiq, dp).complex();
                const Eigen::Index edge = 4 * spb;  // half the lowpass length
                if (z.size() <= 2 * edge) c.invalid("bits", "too few bits to clear the demodulator filter transient");
                const Eigen::Index mid = z.size() - 2 * edge;
                m.set("iq_recovery_rel_error", (2.0 * zr.segment(edge, mid) - z.segment(edge, mid)).norm() / z.segment(edge, mid).norm());
                IqDemodParams off = dp;
                off.phase_estimate = th + deg2rad(c.cfg.num("phase_error_deg"));
                const Eigen::VectorXcd zo = iq_demodulate(r, fiq, off).complex();
                const cplx rot = z.segment(edge, mid).dot(zo.segment(edge, mid));
                m.set("iq_phase_offset_deg", rad2deg(std::arg(rot)));
            }};
}

}  // namespace aperture_forge::cli
