#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../core.hpp"
#include "../sounding.hpp"
#include "context.hpp"

namespace aperture_forge::cli {

namespace detail {

inline FrequencyGrid sounding_grid(const ScenarioContext& c) {
    FrequencyGrid g{c.positive("f_start"), c.positive("f_stop"), c.positive("df")};
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        c.invalid("df", e.what());
    }
    return g;
}

// Square lattice; spacing 0 selects half a wavelength at f_half.
inline SamplingLattice square_lattice(const ScenarioContext& c, double f_half) {
    const Eigen::Index n = c.count("lattice_n", 1, 256);
    double d = c.cfg.num("lattice_spacing");
    if (d < 0.0) c.invalid("lattice_spacing", "\"lattice_spacing\" must be non-negative");
    if (d == 0.0) d = 0.5 * speed_of_light / f_half;
    return planar_lattice(n, n, d, d);
}

inline std::vector<ParamSpec> grid_params() {
    return {num_param("f_start", 26.5e9), num_param("f_stop", 40e9), num_param("df", 10e6)};
}

inline std::vector<ParamSpec> concat(std::vector<ParamSpec> a, const std::vector<ParamSpec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Eigen::Index argmax(const Eigen::VectorXd& v) {
    Eigen::Index i = 0;
    v.maxCoeff(&i);
    return i;
}

}  // namespace detail

inline Scenario sound_constants_scenario() {
    ScenarioSpec s{"sound-constants", "sounding", false,
                   detail::concat(detail::grid_params(),
                                  {num_param("f_max", 0.0), num_param("bandpass_tolerance", 0.05), num_param("aperture", 0.102),
                                   int_param("lattice_n", 35), num_param("lattice_spacing", 0.0), num_param("tx_power", 1.0),
                                   num_param("gain", 1000.0), num_param("effective_area", 0.01), num_param("min_flux", 1e-12),
                                   num_param("backscatter_area", 1.0), num_param("reflection_magnitude", 0.5),
                                   num_param("reflection_phase_deg", 60.0)}),
                   {"core.far_field_distance", "core.plane_wave_field", "core.spherical_wave_field", "sounding.sampling_checks",
                    "sounding.lattice_may_alias", "sounding.friis_range", "sounding.two_ray_path_loss"}};
    return {s, [](ScenarioContext& c) {
                const FrequencyGrid g = detail::sounding_grid(c);
                double f_max = c.cfg.num("f_max");
                if (f_max < 0.0) c.invalid("f_max", "\"f_max\" must be non-negative");
                if (f_max == 0.0) f_max = g.f_stop;
                const double tol = c.positive("bandpass_tolerance");
                auto& m = c.metrics;

                const auto r = sampling_checks(g, f_max, tol);
                m.set("tones", r.tones);
                m.set("bandwidth_hz", g.bandwidth());
                m.set("delay_resolution_ps", r.delay_resolution * 1e12);
                m.set("range_resolution_m", r.range_resolution);
                m.set("t_dur_ns", r.t_dur * 1e9);
                m.set("t_dur_range_m", speed_of_light * r.t_dur);
                m.set("max_range_m", r.max_range);
                m.set("bandpass_ratio", r.ratio);
                m.set("bandpass_q", r.q);
                m.set("bandpass_ok", r.bandpass_ok);

                const double D = c.positive("aperture");
                const double lam = speed_of_light / f_max;
                const double R = far_field_distance(D, f_max);
                m.set("far_field_m", R);
                // edge-to-centre phase of a spherical wave from boresight at R, against the plane wave
                WaveParams w{f_max, 0.0, Direction(Spherical{pi, 0.0})};
                const Eigen::Vector3d src(0.0, 0.0, R), centre = Eigen::Vector3d::Zero(), edge(0.5 * D, 0.0, 0.0);
                const double sph = std::arg(spherical_wave_field(w, src, edge, 0.0) / spherical_wave_field(w, src, centre, 0.0));
                const double pl = std::arg(plane_wave_field(w, edge, 0.0) / plane_wave_field(w, centre, 0.0));
                m.set("far_field_edge_phase_deg", std::abs(rad2deg(std::remainder(sph - pl, two_pi))));

                const SamplingLattice L = detail::square_lattice(c, f_max);
                m.set("lattice_spacing_m", L.dx);
                m.set("lattice_half_wavelength_m", 0.5 * lam);
                m.set("lattice_may_alias", lattice_may_alias(L, f_max));

                const double pt = c.positive("tx_power"), G = c.positive("gain"), A = c.positive("effective_area"),
                             smin = c.positive("min_flux"), sigma = c.positive("backscatter_area");
                m.set("friis_los_range_m", friis_range(pt, G, A, smin));
                m.set("friis_scatter_range_m", friis_range(pt, G, A, smin, sigma));
                const double rho = c.cfg.num("reflection_magnitude");
                if (rho < 0.0) c.invalid("reflection_magnitude", "\"reflection_magnitude\" must be non-negative");
                const auto tr = two_ray_path_loss(rho, deg2rad(c.cfg.num("reflection_phase_deg")));
                m.set("two_ray_beta2", tr.beta2);
                m.set("two_ray_beta2_db", db10(tr.beta2));
                m.set("two_ray_theta_deg", rad2deg(tr.theta));

                c.out.csv("frequency_grid.csv", csv_columns({"tone", "f_hz"}, {Eigen::VectorXd::LinSpaced(r.tones, 0.0, static_cast<double>(r.tones - 1)),
                                                                            Eigen::VectorXd::LinSpaced(r.tones, g.f_start, g[r.tones - 1])}));
            }};
}

inline Scenario sound_squint_scenario() {
    ScenarioSpec s{"sound-squint", "sounding", false,
                   detail::concat(detail::grid_params(),
                                  {int_param("lattice_n", 35), num_param("lattice_spacing", 0.0), num_param("design_frequency", 26.51e9),
                                   num_param("eval_frequency", 40e9), num_param("steer_u", 0.4), num_param("steer_v", 0.0),
                                   int_param("uv_points", 256), int_param("map_tone_stride", 10), num_param("fib_beamwidth_deg", 5.0),
                                   int_param("fib_tones", 11), int_param("spectrum_time_samples", 64), num_param("dynamic_range_db", 40.0)}),
                   {"core.convert_direction", "core.wavenumber_spectrum", "sounding.steering_vector", "sounding.array_factor",
                    "sounding.array_factor_grid", "sounding.peak_gain_db", "sounding.measure_beam_cut", "sounding.fib_weights"}};
    return {s, [](ScenarioContext& c) {
                const FrequencyGrid g = detail::sounding_grid(c);
                const SamplingLattice L = detail::square_lattice(c, g.f_stop);
                const double f0 = c.positive("design_frequency"), fe = c.positive("eval_frequency");
                const double u0 = c.cfg.num("steer_u"), v0 = c.cfg.num("steer_v");
                if (u0 * u0 + v0 * v0 >= 1.0) c.invalid("steer_u", "steering direction is outside visible space");
                const Eigen::Index nu = c.count("uv_points", 16, 4096);
                const Eigen::Index stride = c.count("map_tone_stride", 1, 100000);
                const double dr_db = c.positive("dynamic_range_db");
                const Direction dir(SineSpace{u0, v0});
                auto& m = c.metrics;

                const auto ae = convert_direction<AzEl>(dir);
                const auto sp = convert_direction<Spherical>(dir);
                const auto back = convert_direction<SineSpace>(Direction(ae));
                m.set("steer_az_deg", rad2deg(ae.az));
                m.set("steer_el_deg", rad2deg(ae.el));
                m.set("steer_theta_deg", rad2deg(sp.theta));
                m.set("direction_roundtrip_error", std::max(std::abs(back.u - u0), std::abs(back.v - v0)));

                // uniform aperture at boresight
                const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(L.count());
                m.set("elements", L.count());
                m.set("peak_gain_db", peak_gain_db(L, ones, Direction(), fe));
                m.set("peak_gain_expected_db", db10(static_cast<double>(L.count())));
                const double bw_hi = measure_beam_cut(L, ones, fe, 0.0).width_deg();
                const double bw_lo = measure_beam_cut(L, ones, g.f_start, 0.0).width_deg();
                m.set("beamwidth_deg", bw_hi);
                m.set("beamwidth_low_deg", bw_lo);
                m.set("beamwidth_ratio", bw_lo / bw_hi);

                // narrowband versus true-time-delay steering across every tone
                const UvGrid uv = uv_grid(nu);
                const double du = 2.0 / static_cast<double>(nu);
                const std::vector<double> vcut{v0};
                const Eigen::Index S = g.size();
                std::vector<Eigen::Index> nb_peak(static_cast<size_t>(S)), ttd_peak(static_cast<size_t>(S));
                const Eigen::Index rows = (S + stride - 1) / stride;
                Eigen::MatrixXd nb_map(rows, nu), ttd_map(rows, nu);
                double squint_err = 0.0;
                for (Eigen::Index k = 0; k < S; ++k) {
                    const double f = g[k];
                    for (int mode = 0; mode < 2; ++mode) {
                        const auto sm = mode == 0 ? SteeringMode::narrowband : SteeringMode::true_time_delay;
                        const Eigen::VectorXd pw = array_factor_grid(L, steering_vector(L, dir, f, sm, f0), uv.u, vcut, f).col(0).cwiseAbs2();
                        const Eigen::Index pk = detail::argmax(pw);
                        (mode == 0 ? nb_peak : ttd_peak)[static_cast<size_t>(k)] = pk;
                        if (k % stride == 0) (mode == 0 ? nb_map : ttd_map).row(k / stride) = pw.transpose() / pw.maxCoeff();
                    }
                    squint_err = std::max(squint_err, std::abs(uv.u[static_cast<size_t>(nb_peak[static_cast<size_t>(k)])] - u0 * f0 / f) / du);
                }
                Eigen::Index moved = 0;
                for (auto p : ttd_peak) moved += p != ttd_peak.front();
                m.set("squint_max_error_cells", squint_err);
                m.set("ttd_peak_u", uv.u[static_cast<size_t>(ttd_peak.front())]);
                m.set("ttd_moved_tones", moved);
                const double nb_u = measure_beam_cut(L, steering_vector(L, dir, fe, SteeringMode::narrowband, f0), fe, u0 * f0 / fe, v0).peak_u;
                m.set("narrowband_peak_u", nb_u);
                m.set("narrowband_expected_u", u0 * f0 / fe);
                m.set("narrowband_peak_error", std::abs(nb_u - u0 * f0 / fe));
                m.set("ttd_eval_peak_u", measure_beam_cut(L, steering_vector(L, dir, fe), fe, u0, v0).peak_u);
                c.out.image("squint_narrowband", nb_map, dr_db, ImageScale::power);
                c.out.image("squint_ttd", ttd_map, dr_db, ImageScale::power);

                // frequency-invariant beam against uniform TTD across a coarse tone set
                const Eigen::Index nf = c.count("fib_tones", 2, 1000);
                const double bw = c.positive("fib_beamwidth_deg");
                FrequencyGrid coarse{g.f_start, g.f_stop, g.bandwidth() / static_cast<double>(nf - 1)};
                std::vector<Eigen::VectorXcd> fw;
                try {
                    fw = fib_weights(L, coarse, dir, bw);
                } catch (const std::invalid_argument& e) {
                    c.invalid("fib_beamwidth_deg", e.what());
                }
                Eigen::VectorXd fib_w(nf), uni_w(nf), fcol(nf);
                for (Eigen::Index k = 0; k < nf; ++k) {
                    fcol(k) = coarse[k];
                    fib_w(k) = measure_beam_cut(L, fw[static_cast<size_t>(k)], coarse[k], u0, v0).width_deg();
                    uni_w(k) = measure_beam_cut(L, steering_vector(L, dir, coarse[k]), coarse[k], u0, v0).width_deg();
                }
                m.set("fib_width_min_deg", fib_w.minCoeff());
                m.set("fib_width_max_deg", fib_w.maxCoeff());
                m.set("fib_width_spread_deg", fib_w.maxCoeff() - fib_w.minCoeff());
                m.set("uniform_width_spread_deg", uni_w.maxCoeff() - uni_w.minCoeff());
                c.out.csv("beamwidth_vs_frequency.csv", csv_columns({"f_hz", "fib_deg", "uniform_deg"}, {fcol, fib_w, uni_w}));

                // space-time spectrum of the steered plane wave along one lattice row
                const Eigen::Index nt = c.count("spectrum_time_samples", 4, 1 << 14);
                const double fs = 4.0 * fe;
                std::vector<double> xs, ts;
                for (Eigen::Index i = 0; i < L.nx; ++i) xs.push_back(L.x(i));
                for (Eigen::Index i = 0; i < nt; ++i) ts.push_back(static_cast<double>(i) / fs);
                const Eigen::Vector3d d = dir.unit();
                const Direction prop(Spherical{std::acos(-d.z()), std::atan2(-d.y(), -d.x())});
                const WaveParams w{fe, 0.0, prop};
                Eigen::MatrixXcd field(L.nx, nt);
                for (Eigen::Index i = 0; i < L.nx; ++i)
                    for (Eigen::Index t = 0; t < nt; ++t) field(i, t) = plane_wave_field(w, Eigen::Vector3d(xs[static_cast<size_t>(i)], 0.0, 0.0), ts[static_cast<size_t>(t)]);
                const auto spec = wavenumber_spectrum(xs, ts, field);
                const auto pk = argmax_abs(spec.data);
                const double k_expected = -u0 * fe / speed_of_light;
                m.set("wavenumber_peak_k", spec.axis0[pk.row]);
                m.set("wavenumber_expected_k", k_expected);
                m.set("wavenumber_peak_error_cells", std::abs(spec.axis0[pk.row] - k_expected) / spec.axis0.step);
                m.set("wavenumber_peak_f_hz", spec.axis1[pk.col]);
                c.out.image("wavenumber_spectrum", spec.data.cwiseAbs(), dr_db, ImageScale::magnitude);
            }};
}

inline Scenario sound_padp_scenario() {
    ScenarioSpec s{"sound-padp", "sounding", true,
                   detail::concat(detail::grid_params(),
                                  {int_param("lattice_n", 8), num_param("lattice_spacing", 0.0), nums_param("ray_u", {0.0, 0.3}),
                                   nums_param("ray_v", {0.0, -0.2}), nums_param("ray_delay_ns", {20.0, 35.0}), nums_param("ray_amp_db", {0.0, -6.0}),
                                   num_param("near_range", 0.25), num_param("near_u", -0.5), num_param("near_v", 0.3),
                                   num_param("near_amp_db", -3.0), num_param("noise_sigma", 0.01), str_param("window", "hamming"),
                                   int_param("pad", 4), int_param("uv_points", 64), int_param("aggregate_uv_points", 32),
                                   num_param("aggregate_max_delay_ns", 50.0), int_param("aggregate_stride", 8), num_param("range_start", 0.15),
                                   num_param("range_stop", 0.35), num_param("range_step", 0.005), str_param("sweep_file", ""),
                                   bool_param("write_sweep", false), num_param("dynamic_range_db", 40.0)}),
                   {"sounding.synthesize_sweep", "sounding.padp", "sounding.delay_slice", "sounding.delay_slices", "sounding.aggregate_pdp",
                    "sounding.virtual_source_position", "sounding.spherical_padp", "sounding.write_sweep_csv", "sounding.read_sweep_csv"}};
    return {s, [](ScenarioContext& c) {
                const FrequencyGrid g = detail::sounding_grid(c);
                const SamplingLattice L = detail::square_lattice(c, g.f_stop);
                const auto ru = c.cfg.nums("ray_u"), rv = c.cfg.nums("ray_v"), rd = c.cfg.nums("ray_delay_ns"), ra = c.cfg.nums("ray_amp_db");
                if (ru.empty() || rv.size() != ru.size() || rd.size() != ru.size() || ra.size() != ru.size())
                    c.invalid("ray_u", "ray_u, ray_v, ray_delay_ns and ray_amp_db must be non-empty and of equal length");
                const std::string wname = c.cfg.str("window");
                if (wname != "hamming" && wname != "rectangular") c.invalid("window", "\"window\" must be \"hamming\" or \"rectangular\"");
                PadpOptions o;
                o.window = wname == "hamming" ? Window::hamming : Window::rectangular;
                o.pad = static_cast<int>(c.count("pad", 1, 64));
                const double dr_db = c.positive("dynamic_range_db");
                const double sigma = c.cfg.num("noise_sigma");
                if (sigma < 0.0) c.invalid("noise_sigma", "\"noise_sigma\" must be non-negative");
                auto& m = c.metrics;

                std::vector<ChannelRay> rays;
                for (size_t i = 0; i < ru.size(); ++i) {
                    if (ru[i] * ru[i] + rv[i] * rv[i] > 1.0) c.invalid("ray_u", "ray " + std::to_string(i) + " is outside visible space");
                    rays.push_back(ChannelRay::plane({ru[i], rv[i]}, rd[i] * 1e-9, std::pow(10.0, ra[i] / 20.0)));
                }
                const double near_r = c.cfg.num("near_range");
                if (near_r < 0.0) c.invalid("near_range", "\"near_range\" must be non-negative");
                const Direction near_dir(SineSpace{c.cfg.num("near_u"), c.cfg.num("near_v")});
                if (near_r > 0.0)
                    rays.push_back(ChannelRay::point(virtual_source_position(L, near_dir, near_r), 0.0, std::pow(10.0, c.cfg.num("near_amp_db") / 20.0)));

                SweepData sw;
                const std::string file = c.cfg.str("sweep_file");
                if (file.empty()) {
                    sw = synthesize_sweep(rays, L, g, sigma, c.seed());
                    m.set("sweep_source", "synthesized");
                } else {
                    std::ifstream in(file);
                    if (!in) throw CliError(ErrorCode::io, "cannot open sweep file " + file, "sounding.sweep_file", c.cfg.scenario);
                    sw = read_sweep_csv(in);
                    m.set("sweep_source", "file");
                }
                m.set("tones", sw.grid.size());
                m.set("elements", sw.lattice.count());
                if (c.cfg.flag("write_sweep")) {
                    std::ostringstream os;
                    write_sweep_csv(os, sw);
                    c.out.text("sweep.csv", os.str(), "sweep");
                }

                const Eigen::Index S = sw.grid.size();
                const double bin_step = 1.0 / (static_cast<double>(S * o.pad) * sw.grid.df);
                m.set("delay_step_ps", bin_step * 1e12);
                const UvGrid uv = uv_grid(c.count("uv_points", 4, 1024));
                const double du = 2.0 / static_cast<double>(uv.u.size());
                std::vector<Eigen::Index> bins;
                for (size_t i = 0; i < ru.size(); ++i) {
                    const Eigen::Index b = std::lround(rd[i] * 1e-9 / bin_step);
                    if (b < 0 || b >= S * o.pad) c.invalid("ray_delay_ns", "ray delay outside the unambiguous window");
                    bins.push_back(b);
                }
                const auto slices = delay_slices(sw, uv, bins, o);
                Eigen::Index strongest = 0;
                for (size_t i = 0; i < ru.size(); ++i) {
                    const std::string pre = "ray" + std::to_string(i) + "_";
                    const Pdp p = padp(sw, Direction(SineSpace{ru[i], rv[i]}), o);
                    const Eigen::Index pk = detail::argmax(p.power);
                    m.set(pre + "pdp_peak_delay_ns", p.delay(pk) * 1e9);
                    m.set(pre + "pdp_delay_error_ps", std::abs(p.delay(pk) - rd[i] * 1e-9) * 1e12);
                    m.set(pre + "pdp_peak_db", db10(p.power(pk)));
                    const auto at = argmax_abs(slices[i].power);
                    const double su = uv.u[static_cast<size_t>(at.row)], sv = uv.v[static_cast<size_t>(at.col)];
                    m.set(pre + "slice_peak_uv", std::vector<double>{su, sv});
                    m.set(pre + "slice_error_cells", std::max(std::abs(su - ru[i]), std::abs(sv - rv[i])) / du);
                    c.out.csv(pre + "pdp.csv", csv_columns({"delay_ns", "power"}, {Eigen::VectorXd::LinSpaced(p.power.size(), 0.0, p.delay(p.power.size() - 1) * 1e9), p.power}));
                    c.out.image(pre + "delay_slice", slices[i].power, dr_db, ImageScale::power);
                    if (ra[i] > ra[static_cast<size_t>(strongest)]) strongest = static_cast<Eigen::Index>(i);
                }

                // coarse aggregate profile over the whole visible hemisphere
                const Eigen::Index stride = c.count("aggregate_stride", 1, 1 << 20);
                const double tmax = c.positive("aggregate_max_delay_ns") * 1e-9;
                std::vector<Eigen::Index> abins;
                for (Eigen::Index b = 0; b < S * o.pad && static_cast<double>(b) * bin_step <= tmax; b += stride) abins.push_back(b);
                const auto agg = aggregate_pdp(delay_slices(sw, uv_grid(c.count("aggregate_uv_points", 4, 1024)), abins, o));
                const Eigen::Index apk = detail::argmax(agg);
                const double adelay = static_cast<double>(abins[static_cast<size_t>(apk)]) * bin_step;
                m.set("aggregate_peak_delay_ns", adelay * 1e9);
                m.set("aggregate_peak_error_ns", std::abs(adelay - rd[static_cast<size_t>(strongest)] * 1e-9) * 1e9);
                Eigen::VectorXd adel(static_cast<Eigen::Index>(abins.size()));
                for (size_t i = 0; i < abins.size(); ++i) adel(static_cast<Eigen::Index>(i)) = static_cast<double>(abins[i]) * bin_step * 1e9;
                c.out.csv("aggregate_pdp.csv", csv_columns({"delay_ns", "power"}, {adel, agg}));

                if (near_r > 0.0) {
                    const double r0 = c.positive("range_start"), r1 = c.positive("range_stop"), step = c.positive("range_step");
                    if (r1 < r0) c.invalid("range_stop", "\"range_stop\" must not be below \"range_start\"");
                    const auto prof = spherical_padp(sw, near_dir, r0, r1, step, o.window);
                    const Eigen::Index pk = detail::argmax(prof.power);
                    m.set("near_peak_range_m", prof.ranges[static_cast<size_t>(pk)]);
                    m.set("near_range_error_m", std::abs(prof.ranges[static_cast<size_t>(pk)] - near_r));
                    m.set("near_far_field_m", far_field_distance(static_cast<double>(L.nx - 1) * L.dx, g.f_stop));
                    c.out.csv("near_range_profile.csv",
                              csv_columns({"range_m", "power"}, {as_vector(prof.ranges), prof.power}));
                }
            }};
}

inline Scenario sound_sparse_lattice_scenario() {
    ScenarioSpec s{"sound-sparse-lattice", "sounding", true,
                   {int_param("lattice_n", 35), num_param("lattice_spacing", 0.0), num_param("frequency", 40e9), num_param("keep_fraction", 0.5),
                    int_param("proposals", 20000), int_param("stage_length", 100), num_param("cooling", 0.95), int_param("grid_points", 129),
                    num_param("psl_target_db", -13.0), int_param("decimation", 2), int_param("pattern_points", 129), num_param("dynamic_range_db", 40.0)},
                   {"sounding.peak_sidelobe_db", "sounding.optimize_sparse_lattice", "sounding.decimate_columns"}};
    return {s, [](ScenarioContext& c) {
                const double f = c.positive("frequency");
                const SamplingLattice full = detail::square_lattice(c, f);
                const double keep = c.positive("keep_fraction");
                if (keep > 1.0) c.invalid("keep_fraction", "\"keep_fraction\" must not exceed 1");
                AnnealSchedule a;
                a.proposals = static_cast<int>(c.count("proposals", 0, 10'000'000));
                a.stage_length = static_cast<int>(c.count("stage_length", 1, 10'000'000));
                a.cooling = c.positive("cooling");
                if (a.cooling > 1.0) c.invalid("cooling", "\"cooling\" must not exceed 1");
                a.grid_points = c.count("grid_points", 8, 2048);
                a.psl_target_db = c.cfg.num("psl_target_db");
                const Eigen::Index np = c.count("pattern_points", 8, 2048);
                const double dr_db = c.positive("dynamic_range_db");
                auto& m = c.metrics;

                m.set("elements_full", full.count());
                m.set("full_psl_db", peak_sidelobe_db(full, f, a.grid_points));
                const auto r = optimize_sparse_lattice(full, keep, f, a, c.seed());
                m.set("elements_kept", r.lattice.count());
                m.set("initial_psl_db", r.initial_psl_db);
                m.set("psl_db", r.psl_db);
                m.set("psl_check_db", peak_sidelobe_db(r.lattice, f, a.grid_points));
                m.set("met_target", r.met_target);
                m.set("accepted", r.accepted);
                m.set("initial_temperature_db", r.initial_temperature);

                const SamplingLattice dec = decimate_columns(full, c.count("decimation", 1, full.nx));
                const double dpsl = peak_sidelobe_db(dec, f, a.grid_points);
                m.set("decimated_elements", dec.count());
                m.set("decimated_psl_db", dpsl);
                m.set("decimated_grating_lobe_within_1db", dpsl > -1.0);

                Eigen::MatrixXd mask(full.ny, full.nx);
                for (Eigen::Index p = 0; p < full.total(); ++p) mask(p / full.nx, p % full.nx) = r.lattice.is_active(p) ? 1.0 : 0.0;
                c.out.image("sparse_mask", mask, dr_db, ImageScale::power);
                const UvGrid uv = uv_grid(np);
                const Eigen::MatrixXd pat = array_factor_grid(r.lattice, Eigen::VectorXcd::Ones(r.lattice.count()), uv.u, uv.v, f).cwiseAbs2();
                c.out.image("sparse_pattern", pat, dr_db, ImageScale::power);
            }};
}

}  // namespace aperture_forge::cli
