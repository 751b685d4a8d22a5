#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "../core.hpp"
#include "../sar.hpp"
#include "../waveforms.hpp"
#include "context.hpp"

namespace aperture_forge::cli {

namespace detail {

inline SarParams sar_params(const ScenarioContext& c) {
    SarParams p;
    p.carrier = c.positive("carrier");
    p.chirp = LfmChirp{c.positive("pulse_duration"), c.positive("bandwidth")};
    p.sample_rate = c.positive("sample_rate");
    p.prf = c.positive("prf");
    p.velocity = c.positive("velocity");
    p.pulses = c.count("pulses", 2, 4096);
    p.samples = c.count("samples", 2, 1 << 16);
    p.near_range = c.positive("near_range");
    p.noise_sigma = c.cfg.num("noise_sigma");
    if (p.noise_sigma < 0.0) c.invalid("noise_sigma", "\"noise_sigma\" must be non-negative");
    p.validate();
    return p;
}

// Rayleigh and half-power widths of a 1-D cut through a backprojected target.
struct CutWidths {
    double null_width = 0.0;
    double half_power = 0.0;
    Eigen::VectorXd coord, mag;
};

inline CutWidths measure_cut(const PhaseHistory& ph, const ImageLattice& L, bool along_range, double step, const BackprojectionOptions& o) {
    const auto img = backproject(ph, L, o);
    CutWidths w;
    w.mag = along_range ? Eigen::VectorXd(img.pixels.data.row(0).cwiseAbs().transpose()) : Eigen::VectorXd(img.pixels.data.col(0).cwiseAbs());
    w.coord.resize(w.mag.size());
    for (Eigen::Index i = 0; i < w.mag.size(); ++i) w.coord(i) = along_range ? L.r(i) : L.x(i);
    const Eigen::Index pk = argmax_abs_vec(w.mag);
    w.null_width = peak_to_first_null(w.mag, pk) * step;
    w.half_power = lobe_width(Eigen::VectorXd(w.mag.cwiseAbs2()), pk) * step;
    return w;
}

}  // namespace detail

inline Scenario sar_point_scenario() {
    ScenarioSpec s{"sar-point", "sar", true,
                   {num_param("carrier", 10e9), num_param("bandwidth", 150e6), num_param("pulse_duration", 0.4e-6),
                    num_param("sample_rate", 300e6), num_param("prf", 400.0), num_param("velocity", 100.0), int_param("pulses", 64),
                    int_param("samples", 256), num_param("near_range", 480.0), num_param("noise_sigma", 0.0),
                    int_param("target_x_index", 32), int_param("target_r_index", 120), num_param("antenna_length", 1.0),
                    int_param("threads", 1), bool_param("cubic_stolt", false), num_param("dynamic_range_db", 40.0)},
                   {"sar.simulate_phase_history", "sar.sar_resolutions", "sar.backproject", "sar.omega_k_focus", "sar.chirp_scaling_focus"}};
    return {s, [](ScenarioContext& c) {
                const SarParams p = detail::sar_params(c);
                const ImageLattice L = native_lattice(p);
                const Eigen::Index ix = c.count("target_x_index", 0, L.nx - 1);
                const Eigen::Index ir = c.count("target_r_index", 0, L.nr - 1);
                const BackprojectionOptions bo{16, static_cast<int>(c.count("threads", 1, 64))};
                const double dr_db = c.positive("dynamic_range_db");
                auto& m = c.metrics;

                SarScene point;
                point.scatterers = {{L.x(ix), L.r(ir), 1.0}};
                const auto ph = simulate_phase_history(point, p, c.seed());
                const auto img = backproject(ph, L, bo);
                const auto pk = argmax_abs(img.pixels.data);
                m.set("peak_pixel", std::vector<long long>{pk.row, pk.col});
                m.set("peak_pixel_expected", std::vector<long long>{ix, ir});
                m.set("peak_exact", pk.row == ix && pk.col == ir);
                c.out.image("point_backprojection", img.pixels.data.cwiseAbs(), dr_db, ImageScale::magnitude);

                const double r1 = L.r(ir), x1 = L.x(ix);
                const auto law = sar_resolutions(p, r1, c.positive("antenna_length"));
                m.set("range_res_theory", law.range);
                m.set("xr_res_theory", law.cross_range);
                m.set("aperture_length", law.aperture_length);
                m.set("unfocused_length", law.unfocused_length);
                m.set("focused_length", law.focused_length.value_or(0.0));
                m.set("doppler_res", law.doppler);

                // fine cuts through the target, 50 samples per theoretical resolution cell
                const double sr = law.range / 50.0, sx = law.cross_range / 50.0;
                const auto rg = detail::measure_cut(ph, {x1, 1.0, 1, r1 - 6.0 * law.range, sr, 601}, true, sr, bo);
                const auto xr = detail::measure_cut(ph, {x1 - 6.0 * law.cross_range, sx, 601, r1, 1.0, 1}, false, sx, bo);
                m.set("range_res_measured", rg.null_width);
                m.set("xr_res_measured", xr.null_width);
                m.set("range_res_half_power", rg.half_power);
                m.set("xr_res_half_power", xr.half_power);
                m.set("range_res_ratio", rg.null_width / law.range);
                m.set("xr_res_ratio", xr.null_width / law.cross_range);
                c.out.csv("range_cut.csv", csv_columns({"range_m", "magnitude"}, {rg.coord, rg.mag}));
                c.out.csv("cross_range_cut.csv", csv_columns({"x_m", "magnitude"}, {xr.coord, xr.mag}));

                // five-scatterer scene through all three focusers
                SarScene scene;
                auto at = [&](double fx, double fr) {
                    return std::pair{L.x(static_cast<Eigen::Index>(fx * static_cast<double>(L.nx - 1))),
                                     L.r(static_cast<Eigen::Index>(fr * static_cast<double>(L.nr - 1)))};
                };
                const std::vector<std::tuple<double, double, cplx>> layout{
                    {0.50, 0.50, 1.0}, {0.31, 0.39, {0.6, 0.3}}, {0.71, 0.59, 0.8}, {0.16, 0.67, {0.0, 0.7}}, {0.79, 0.35, 0.5}};
                for (const auto& [fx, fr, a] : layout) {
                    const auto [x, r] = at(fx, fr);
                    scene.scatterers.push_back({x, r, a});
                }
                const auto ph5 = simulate_phase_history(scene, p, c.seed() + 1);
                const Eigen::MatrixXd bp = backproject(ph5, L, bo).pixels.data.cwiseAbs();
                OmegaKOptions wo;
                if (c.cfg.flag("cubic_stolt")) wo.interp = StoltInterp::cubic;
                const auto wk = omega_k(ph5, wo);
                const auto cs = chirp_scaling(ph5);
                const Eigen::MatrixXd wkm = wk.image.pixels.data.cwiseAbs(), csm = cs.image.pixels.data.cwiseAbs();
                m.set("corr_omega_k", correlation(bp, wkm));
                m.set("corr_chirp_scaling", correlation(bp, csm));
                m.set("omega_k_evanescent_bins", wk.evanescent_bins);
                m.set("chirp_scaling_clamped_bins", cs.clamped_doppler_bins);
                c.out.image("scene_backprojection", bp, dr_db, ImageScale::magnitude);
                c.out.image("scene_omega_k", wkm, dr_db, ImageScale::magnitude);
                c.out.image("scene_chirp_scaling", csm, dr_db, ImageScale::magnitude);
            }};
}

inline Scenario sar_tomo_scenario() {
    ScenarioSpec s{"sar-tomo", "sar", false,
                   {int_param("angles", 180), int_param("detector_bins", 184), int_param("image_size", 128), num_param("spacing", 1.0),
                    nums_param("disc_x", {0.0, 10.0, -15.0}), nums_param("disc_y", {0.0, -5.0, 10.0}),
                    nums_param("disc_radius", {40.0, 12.0, 8.0}), nums_param("disc_value", {1.0, 0.5, -0.4}),
                    num_param("dynamic_range_db", 40.0)},
                   {"sar.tomographic_reconstruct"}};
    return {s, [](ScenarioContext& c) {
                const auto na = c.count("angles", 2, 3600);
                const auto nb = c.count("detector_bins", 8, 1 << 14);
                const auto n = c.count("image_size", 8, 2048);
                const double ds = c.positive("spacing");
                const auto dx = c.cfg.nums("disc_x"), dy = c.cfg.nums("disc_y"), dr = c.cfg.nums("disc_radius"), dv = c.cfg.nums("disc_value");
                if (dx.empty() || dy.size() != dx.size() || dr.size() != dx.size() || dv.size() != dx.size())
                    c.invalid("disc_x", "disc arrays must be non-empty and equally long");
                std::vector<Disc> discs;
                for (size_t i = 0; i < dx.size(); ++i) discs.push_back({dx[i], dy[i], dr[i], dv[i]});
                std::vector<double> angles;
                for (Eigen::Index i = 0; i < na; ++i) angles.push_back(pi * static_cast<double>(i) / static_cast<double>(na));

                const auto proj = project_discs(discs, angles, nb, ds);
                const auto truth = rasterize_discs(discs, n, ds);
                const auto fbp = tomo_fbp(proj, n);
                const auto polar = tomo_polar_interp(proj, n);
                const double range = truth.data.maxCoeff() - truth.data.minCoeff();
                if (!(range > 0.0)) c.invalid("disc_value", "phantom has no contrast");
                auto rmse = [&](const Eigen::MatrixXd& a) { return std::sqrt((a - truth.data).squaredNorm() / static_cast<double>(a.size())) / range; };
                auto& m = c.metrics;
                m.set("rmse_fbp", rmse(fbp.data));
                m.set("rmse_polar", rmse(polar.data));
                m.set("corr_fbp_polar", correlation(fbp.data, polar.data));
                m.set("dynamic_range", range);
                const double dr_db = c.positive("dynamic_range_db");
                c.out.image("sinogram", proj.data.cwiseAbs(), dr_db, ImageScale::magnitude);
                c.out.image("phantom", truth.data.cwiseAbs(), dr_db, ImageScale::magnitude);
                c.out.image("fbp", fbp.data.cwiseAbs(), dr_db, ImageScale::magnitude);
                c.out.image("polar_interp", polar.data.cwiseAbs(), dr_db, ImageScale::magnitude);
            }};
}

inline Scenario sar_capon_scenario() {
    ScenarioSpec s{"sar-capon", "sar", true,
                   {int_param("elements", 16), num_param("element_spacing", 0.1), int_param("tones", 16), num_param("f_start", 9.5e9),
                    num_param("df", 62.5e6), nums_param("source_x", {0.0, 0.45}), nums_param("source_amp_db", {0.0, -3.0}),
                    num_param("source_range", 20.0), num_param("snr_db", 20.0), num_param("loading", 1e-3), int_param("block_divisor", 4),
                    num_param("overlap", 0.75), num_param("x_min", -1.0), num_param("x_max", 1.0), int_param("nx", 201),
                    num_param("y_min", 19.0), num_param("y_max", 21.0), int_param("ny", 21), num_param("dynamic_range_db", 30.0)},
                   {"sar.capon_image"}};
    return {s, [](ScenarioContext& c) {
                const auto M = c.count("elements", 2, 1024), N = c.count("tones", 2, 1024);
                const auto nx = c.count("nx", 2, 4096), ny = c.count("ny", 1, 4096);
                const auto sx = c.cfg.nums("source_x"), sa = c.cfg.nums("source_amp_db");
                if (sx.empty() || sa.size() != sx.size()) c.invalid("source_x", "source_x and source_amp_db must be non-empty and equally long");
                const double y0 = c.positive("source_range");
                CaponProblem P;
                for (Eigen::Index i = 0; i < M; ++i) P.positions.push_back((static_cast<double>(i) - 0.5 * static_cast<double>(M - 1)) * c.positive("element_spacing"));
                for (Eigen::Index k = 0; k < N; ++k) P.frequencies.push_back(c.positive("f_start") + static_cast<double>(k) * c.positive("df"));
                P.Z = Eigen::MatrixXcd::Zero(M, N);
                P.loading = c.cfg.num("loading");
                P.block_divisor = static_cast<int>(c.count("block_divisor", 1, 64));
                P.overlap = c.cfg.num("overlap");
                Rng rng(c.seed());
                const double noise = from_db10(-c.cfg.num("snr_db"));
                for (Eigen::Index i = 0; i < M; ++i)
                    for (Eigen::Index k = 0; k < N; ++k) {
                        cplx acc = complex_gaussian(rng, noise);
                        for (size_t q = 0; q < sx.size(); ++q) {
                            const double R = std::hypot(sx[q] - P.positions[static_cast<size_t>(i)], y0);
                            acc += std::sqrt(from_db10(sa[q])) * std::polar(1.0, -4.0 * pi * P.frequencies[static_cast<size_t>(k)] * R / P.speed);
                        }
                        P.Z(i, k) = acc;
                    }
                const double x0 = c.cfg.num("x_min"), x1 = c.cfg.num("x_max"), ya = c.cfg.num("y_min"), yb = c.cfg.num("y_max");
                if (!(x1 > x0) || !(yb >= ya)) c.invalid("x_max", "image extents must be increasing");
                const Axis xa{x0, (x1 - x0) / static_cast<double>(nx - 1), "m"};
                const Axis yax{ya, ny > 1 ? (yb - ya) / static_cast<double>(ny - 1) : 1.0, "m"};
                const auto img = capon_image(P, xa, nx, yax, ny);

                auto& m = c.metrics;
                // cut along x through the row closest to the source range
                const auto row = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::llround((y0 - ya) / yax.step)), 0, ny - 1);
                const Eigen::VectorXd cap = img.capon.data.col(row), conv = img.conventional.data.col(row);
                const auto pc = argmax_abs_vec(cap), pv = argmax_abs_vec(conv);
                const auto strongest = static_cast<size_t>(std::max_element(sa.begin(), sa.end()) - sa.begin());
                m.set("capon_peak_x", xa[pc]);
                m.set("conventional_peak_x", xa[pv]);
                m.set("capon_peak_error", std::abs(xa[pc] - sx[strongest]));
                m.set("capon_width", lobe_width(cap, pc) * xa.step);
                m.set("conventional_width", lobe_width(conv, pv) * xa.step);
                m.set("width_ratio", lobe_width(cap, pc) / lobe_width(conv, pv));
                const double dr_db = c.positive("dynamic_range_db");
                c.out.image("capon", img.capon.data, dr_db, ImageScale::power);
                c.out.image("conventional", img.conventional.data, dr_db, ImageScale::power);
            }};
}

inline Scenario sar_speckle_scenario() {
    ScenarioSpec s{"sar-speckle", "sar", true,
                   {int_param("size", 128), num_param("level", 3.0), num_param("block_level", 30.0), num_param("sigma_mu", 0.1),
                    int_param("window", 7), num_param("dynamic_range_db", 20.0)},
                   {"sar.apply_speckle", "sar.lee_filter"}};
    return {s, [](ScenarioContext& c) {
                const auto n = c.count("size", 16, 4096);
                const auto w = c.count("window", 3, 101);
                const double sigma = c.cfg.num("sigma_mu");
                Eigen::MatrixXd y = Eigen::MatrixXd::Constant(n, n, c.positive("level"));
                // bright block on the right; the flat region is every column left of it, less one window
                const Eigen::Index b0 = 5 * n / 8, b1 = 7 * n / 8;
                y.block(n / 4, b0, n / 2, b1 - b0).setConstant(c.positive("block_level"));
                const Eigen::MatrixXd z = apply_speckle(y, sigma, c.seed());
                const Eigen::MatrixXd f = lee_filter(z, static_cast<int>(w), sigma);
                const Eigen::Index flat = b0 - w;
                if (flat < 2) c.invalid("window", "window leaves no flat region");
                auto var = [](const Eigen::MatrixXd& a) { return (a.array() - a.mean()).square().mean(); };
                const Eigen::MatrixXd zf = z.leftCols(flat), ff = f.leftCols(flat);
                auto& m = c.metrics;
                m.set("flat_input_var", var(zf));
                m.set("flat_output_var", var(ff));
                m.set("var_ratio", var(ff) / var(zf));
                m.set("flat_mean_ratio", ff.mean() / zf.mean());
                const Eigen::MatrixXd fb = f.block(n / 4 + w, b0 + w, n / 2 - 2 * w, b1 - b0 - 2 * w);
                const Eigen::MatrixXd yb = y.block(n / 4 + w, b0 + w, n / 2 - 2 * w, b1 - b0 - 2 * w);
                if (fb.size() > 0) m.set("block_mean_ratio", fb.mean() / yb.mean());
                const double dr_db = c.positive("dynamic_range_db");
                c.out.image("clean", y, dr_db, ImageScale::power);
                c.out.image("speckled", z, dr_db, ImageScale::power);
                c.out.image("lee_filtered", f, dr_db, ImageScale::power);
            }};
}

inline Scenario qsar_budget_scenario() {
    ScenarioSpec s{"qsar-budget", "sar", false,
                   {num_param("power", 1.0), num_param("gain", 1.0), num_param("wavelength", 0.03), num_param("rcs", 1.0),
                    num_param("range_resolution", 1.0), num_param("range", 1e3), num_param("noise_temperature", 290.0),
                    num_param("noise_figure", 1.0), num_param("atmospheric_loss", 1.0), num_param("platform_speed", 100.0),
                    num_param("grazing_deg", 30.0), num_param("snr_db_min", -30.0), num_param("snr_db_max", 20.0), int_param("snr_points", 51),
                    int_param("adc_bits", 12), num_param("adc_full_scale", 2.0), int_param("adc_tone_samples", 32768)},
                   {"sar.qsar_metrics", "waveforms.adc_metrics"}};
    return {s, [](ScenarioContext& c) {
                QsarBudget b;
                b.power = c.cfg.num("power");
                b.gain = c.cfg.num("gain");
                b.wavelength = c.cfg.num("wavelength");
                b.rcs = c.cfg.num("rcs");
                b.range_resolution = c.cfg.num("range_resolution");
                b.range = c.cfg.num("range");
                b.noise_temperature = c.cfg.num("noise_temperature");
                b.noise_figure = c.cfg.num("noise_figure");
                b.atmospheric_loss = c.cfg.num("atmospheric_loss");
                b.platform_speed = c.cfg.num("platform_speed");
                b.grazing = deg2rad(c.cfg.num("grazing_deg"));
                const auto snr = qsar_snr(b);
                const auto eps = qsar_error_rates(snr.linear);
                const auto zero = qsar_error_rates(0.0);
                auto& m = c.metrics;
                m.set("snr_linear", snr.linear);
                m.set("snr_db", snr.db);
                m.set("clear_image", snr.clear_image);
                m.set("eps_classical", eps.classical);
                m.set("eps_quantum", eps.quantum);
                m.set("eps_classical_at_zero", zero.classical);
                m.set("eps_quantum_at_zero", zero.quantum);

                const auto np = c.count("snr_points", 2, 100000);
                const double lo = c.cfg.num("snr_db_min"), hi = c.cfg.num("snr_db_max");
                if (!(hi > lo)) c.invalid("snr_db_max", "SNR sweep must be increasing");
                Eigen::VectorXd sdb(np), ec(np), eq(np);
                double worst = 0.0;
                for (Eigen::Index i = 0; i < np; ++i) {
                    sdb(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(np - 1);
                    const auto e = qsar_error_rates(sdb(i), SnrUnit::db);
                    ec(i) = e.classical;
                    eq(i) = e.quantum;
                    const double ref = qsar_error_rates(4.0 * from_db10(sdb(i))).classical;
                    worst = std::max(worst, std::abs(e.quantum - ref) / ref);
                }
                m.set("identity_max_rel_error", worst);
                c.out.csv("error_rates.csv", csv_columns({"snr_db", "eps_classical", "eps_quantum"}, {sdb, ec, eq}));

                const int bits = static_cast<int>(c.count("adc_bits", 1, 30));
                const double fs = c.positive("adc_full_scale");
                const auto ns = c.count("adc_tone_samples", 64, 1 << 22);
                Eigen::VectorXd x(ns);
                for (Eigen::Index i = 0; i < ns; ++i) x(i) = 0.499999 * fs * std::sin(two_pi * (0.0377 + 1e-5 * pi) * static_cast<double>(i));
                const Eigen::VectorXd q = adc_quantize(x, bits, fs);
                const double sndr = 10.0 * std::log10(x.squaredNorm() / (q - x).squaredNorm());
                const auto adc = adc_metrics(bits, fs, sndr);
                m.set("adc_snr_ideal_db", adc.snr_ideal_db);
                m.set("adc_snr_exact_db", adc.snr_exact_db);
                m.set("adc_lsb", adc.lsb);
                m.set("adc_quantization_noise", adc.quantization_noise);
                m.set("adc_sndr_measured_db", sndr);
                m.set("adc_enob", adc.enob.value_or(0.0));
                m.set("adc_low_resolution_caveat", adc.low_resolution_caveat);
            }};
}

}  // namespace aperture_forge::cli
