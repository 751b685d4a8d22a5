// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Usage: acceptance <path-to-aperture-forge>

#include <aperture_forge/cli.hpp>
#include <aperture_forge/core.hpp>
#include <aperture_forge/inversion.hpp>
#include <aperture_forge/radiometry.hpp>
#include <aperture_forge/sar.hpp>
#include <aperture_forge/sas.hpp>
#include <aperture_forge/sounding.hpp>
#include <aperture_forge/waveforms.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace aperture_forge;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_bin;
fs::path g_work;

struct Outcome {
    bool pass = true;
    std::string details;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!details.empty()) details += "; ";
        details += what + (ok ? "" : " [miss]");
    }
};

std::string fmt(double v, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliRun {
    int status = -1;
    double wall_s = 0.0;
    fs::path out;
    json report;
};

CliRun run_cli(const std::string& scenario, const json& config, const std::string& tag) {
    CliRun r;
    const fs::path cfg = g_work / (tag + ".json");
    r.out = g_work / tag;
    fs::remove_all(r.out);
    {
        std::ofstream f(cfg);
        f << config.dump();
    }
    const std::string cmd = "\"" + g_bin + "\" " + scenario + " --config \"" + cfg.string() + "\" --out \"" + r.out.string() + "\" > \"" +
                            (g_work / (tag + ".stdout")).string() + "\" 2> \"" + (g_work / (tag + ".stderr")).string() + "\"";
    const auto t0 = std::chrono::steady_clock::now();
    const int raw = std::system(cmd.c_str());
    r.wall_s = seconds_since(t0);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    if (r.status == 0) r.report = json::parse(slurp(r.out / "report.json"));
    return r;
}

SamplingLattice square(Eigen::Index n, double f) {
    SamplingLattice L;
    L.nx = L.ny = n;
    L.dx = L.dy = 0.5 * speed_of_light / f;
    return L;
}

Eigen::VectorXcd ones(const SamplingLattice& L) { return Eigen::VectorXcd::Ones(L.total()); }

// 1. sounder constants through the CLI
Outcome sound_constants() {
    Outcome o;
    const auto r = run_cli("sound-constants", json::object(), "c1");
    o.check(r.status == 0, "exit " + std::to_string(r.status));
    if (r.status != 0) return o;
    const auto& m = r.report["metrics"];
    auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-6 * std::abs(b); };
    // oracle: B = 13.5 GHz, df = 10 MHz
    const double B = 40e9 - 26.5e9, df = 10e6;
    o.check(m["tones"].get<long long>() == 1351, "S=" + m["tones"].dump());
    o.check(rel(m["delay_resolution_ps"].get<double>(), 1e12 / B), "dtau=" + fmt(m["delay_resolution_ps"].get<double>(), 6) + " ps");
    o.check(rel(m["range_resolution_m"].get<double>(), speed_of_light / B), "dR=" + fmt(m["range_resolution_m"].get<double>()) + " m");
    o.check(rel(m["t_dur_ns"].get<double>(), 1e9 / df), "T_dur=" + fmt(m["t_dur_ns"].get<double>()) + " ns");
    o.check(rel(m["t_dur_range_m"].get<double>(), speed_of_light / df), "c*T_dur=" + fmt(m["t_dur_range_m"].get<double>()) + " m");
    o.check(rel(m["bandpass_ratio"].get<double>(), 40e9 / B) && std::abs(m["bandpass_ratio"].get<double>() - 2.96) < 0.005,
            "ratio=" + fmt(m["bandpass_ratio"].get<double>()));
    o.check(m["bandpass_ok"].get<bool>(), "bandpass ok");
    o.check(r.wall_s < 1.0, "runtime " + fmt(r.wall_s, 3) + " s");
    return o;
}

// 2. uniform 35 x 35 array at 40 GHz
Outcome uniform_array() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto L = square(35, 40e9);
    const double pk = peak_gain_db(L, ones(L), Direction{}, 40e9);
    const double bw = measure_beam_cut(L, ones(L), 40e9, 0.0).width_deg();
    const double t = seconds_since(t0);
    o.check(std::abs(pk - 30.88) <= 0.01, "peak " + fmt(pk, 6) + " dB");
    o.check(std::abs(pk - 10.0 * std::log10(1225.0)) < 1e-9, "10 log10(N) oracle");
    o.check(std::abs(bw - 2.9) <= 0.2, "beamwidth " + fmt(bw) + " deg");
    o.check(t < 10.0, "runtime " + fmt(t, 3) + " s");
    return o;
}

// 3. far-field distance
Outcome far_field() {
    Outcome o;
    const double d = far_field_distance(0.102, 40e9);
    const double oracle = 2.0 * 0.102 * 0.102 / (speed_of_light / 40e9);
    o.check(std::abs(d - 2.77) <= 0.01, "d_F=" + fmt(d, 5) + " m");
    o.check(std::abs(d - oracle) < 1e-12, "2D^2/lambda oracle");
    return o;
}

// 4. LFM ambiguity against the closed form on a 201 x 201 grid
Outcome ambiguity() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const LfmChirp c{4e-6, 5e6};
    const double fs = 100e6;
    const auto u = sample_lfm(c, fs);
    std::vector<double> tau, fd;
    const double tstep = std::round(2.0 * c.duration * fs / 200.0) / fs;
    for (int k = -100; k <= 100; ++k) tau.push_back(k * tstep);
    for (int q = -100; q <= 100; ++q) fd.push_back(q * 2.0 * c.bandwidth / 100.0);
    const auto A = ambiguity_surface(u, fs, tau, fd);
    double err = 0.0;
    for (Eigen::Index i = 0; i < 201; ++i)
        for (Eigen::Index q = 0; q < 201; ++q) err = std::max(err, std::abs(A.values(i, q) - lfm_ambiguity(c, tau[size_t(i)], fd[size_t(q)])));
    const double t = seconds_since(t0);
    o.check(A.values.rows() == 201 && A.values.cols() == 201, "grid 201x201");
    o.check(err < 1e-3, "max abs error " + fmt(err));
    o.check(std::abs(A.values(100, 100) - 1.0) <= 1e-9, "psi(0,0)=" + fmt(A.values(100, 100), 12));
    o.check(t < 10.0, "runtime " + fmt(t, 3) + " s");
    return o;
}

// 5. SAR point target and focuser agreement through the CLI
Outcome sar_point() {
    Outcome o;
    const auto r = run_cli("sar-point", json{{"seed", 1}}, "c5");
    o.check(r.status == 0, "exit " + std::to_string(r.status));
    if (r.status != 0) return o;
    const auto& m = r.report["metrics"];
    o.check(m["peak_exact"].get<bool>(), "peak pixel " + m["peak_pixel"].dump());
    o.check(std::abs(m["range_res_ratio"].get<double>() - 1.0) <= 0.10, "dR ratio " + fmt(m["range_res_ratio"].get<double>()));
    o.check(std::abs(m["xr_res_ratio"].get<double>() - 1.0) <= 0.10, "dx ratio " + fmt(m["xr_res_ratio"].get<double>()));
    // independent law: dR = c / 2B
    const double dR = speed_of_light / (2.0 * 150e6);
    o.check(std::abs(m["range_res_theory"].get<double>() / dR - 1.0) < 1e-9, "range law");
    o.check(m["corr_omega_k"].get<double>() >= 0.9, "omega-k corr " + fmt(m["corr_omega_k"].get<double>()));
    o.check(m["corr_chirp_scaling"].get<double>() >= 0.9, "chirp-scaling corr " + fmt(m["corr_chirp_scaling"].get<double>()));
    o.check(r.wall_s < 60.0, "runtime " + fmt(r.wall_s, 3) + " s");
    return o;
}

// 6. tomography of a disc phantom
Outcome tomography() {
    Outcome o;
    std::vector<double> angles;
    for (int i = 0; i < 180; ++i) angles.push_back(i * pi / 180.0);
    const std::vector<Disc> discs{{0, 0, 40, 1.0}, {10, -5, 12, 0.5}, {-15, 10, 8, -0.4}};
    const auto proj = project_discs(discs, angles, 184, 1.0);
    const auto truth = rasterize_discs(discs, 128, 1.0);
    const auto fbp = tomo_fbp(proj, 128);
    const auto polar = tomo_polar_interp(proj, 128);
    const double range = truth.data.maxCoeff() - truth.data.minCoeff();
    auto rmse = [&](const Eigen::MatrixXd& a) { return std::sqrt((a - truth.data).squaredNorm() / double(a.size())) / range; };
    const double ef = rmse(fbp.data), ep = rmse(polar.data), cr = correlation(fbp.data, polar.data);
    o.check(ef < 0.10, "FBP rmse " + fmt(ef));
    o.check(ep < 0.10, "polar rmse " + fmt(ep));
    o.check(cr >= 0.95, "FBP/polar corr " + fmt(cr));
    return o;
}

// 7. beam squint versus true time delay
Outcome squint() {
    Outcome o;
    const auto L = square(35, 40e9);
    const FrequencyGrid G;
    const auto g = uv_grid(256);
    const double cell = 2.0 / 256.0;
    const Direction d(SineSpace{0.4, 0.0});
    auto peak = [&](const Eigen::VectorXcd& w, double f) { return argmax_abs(array_factor_grid(L, w, g.u, {0.0}, f)).row; };
    const double u40 = g.u[size_t(peak(steering_vector(L, d, 40e9, SteeringMode::narrowband, 26.51e9), 40e9))];
    o.check(std::abs(u40 - 0.265) <= cell, "narrowband peak u=" + fmt(u40) + " (cell " + fmt(cell) + ")");
    o.check(std::abs(0.4 * 26.51 / 40.0 - 0.265) < 1e-3, "u0 f0/f oracle");
    const auto ref = peak(steering_vector(L, d, G[0]), G[0]);
    Eigen::Index moved = 0;
    for (Eigen::Index s = 0; s < G.size(); ++s)
        if (peak(steering_vector(L, d, G[s]), G[s]) != ref) ++moved;
    o.check(std::abs(g.u[size_t(ref)] - 0.4) <= cell, "TTD peak u=" + fmt(g.u[size_t(ref)]));
    o.check(moved == 0 && G.size() == 1351, "TTD peak moved on " + std::to_string(moved) + "/" + std::to_string(G.size()) + " tones");
    return o;
}

// 8. sparse lattice annealing and periodic decimation
Outcome sparse_lattice() {
    Outcome o;
    const auto L = square(35, 40e9);
    const auto res = optimize_sparse_lattice(L, 0.5, 40e9, {}, 1);
    o.check(res.lattice.count() == 613, "kept " + std::to_string(res.lattice.count()) + "/1225");
    o.check(res.psl_db <= -13.0, "annealed PSL " + fmt(res.psl_db) + " dB");
    const double dpsl = peak_sidelobe_db(decimate_columns(L, 2), 40e9);
    o.check(dpsl >= -1.0, "2x decimation PSL " + fmt(dpsl) + " dB");
    return o;
}

// 9. SAS imaging and sparse recovery
Outcome sas() {
    Outcome o;
    SasConfig sc;
    sc.speed = 2.0;
    sc.recording_time = 0.02;
    sc.pings = 32;
    sc.rx_offsets = {0.0, 0.02, 0.04, 0.06};
    const FrequencyGrid band{90e3, 110e3, 400.0};
    const SasGrid grid{8.0, 0.1, 16, 0.0, 0.1, 16, 0.0};
    const auto g = build_geometry(sc);
    const auto m = build_sensing_model(g, grid.points(), band);

    bool cbf_ok = true;
    for (const auto& [ix, iy] : {std::pair<Eigen::Index, Eigen::Index>{3, 4}, {12, 7}, {8, 15}}) {
        const Eigen::Index n = grid.index(ix, iy);
        SasScene s{grid.points(), Eigen::VectorXcd::Zero(grid.size())};
        s.s(n) = 1.0;
        cbf_ok = cbf_ok && argmax_abs_vec(sas_cbf(simulate_measurements(g, s, band), m)) == n;
    }
    o.check(cbf_ok, "single-scatterer CBF argmax");

    const auto sys0 = LassoSystem::from(m.A, Eigen::VectorXcd::Zero(m.rows()));
    const double lip = lipschitz_estimate_gram(sys0.G);
    int recovered = 0;
    bool mono = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        std::set<Eigen::Index> truth;
        std::uniform_int_distribution<Eigen::Index> pick(0, grid.size() - 1);
        while (truth.size() < 5) truth.insert(pick(rng));
        SasScene scene{grid.points(), Eigen::VectorXcd::Zero(grid.size())};
        for (auto i : truth) scene.s(i) = random_phasor(rng);
        const double signal = simulate_measurements(g, scene, band).d.squaredNorm() / double(m.rows());
        const double sigma = std::sqrt(signal / 100.0);
        const auto data = simulate_measurements(g, scene, band, sigma, 100 + seed);
        LassoOptions lo;
        lo.mu = lasso_mu_noise(sigma, m.rows(), m.cols());
        lo.lipschitz = lip;
        lo.max_iter = 2000;
        const auto r = sas_sparse(data, m, lo);
        std::set<Eigen::Index> found;
        for (Eigen::Index i = 0; i < r.s.size(); ++i)
            if (r.s(i) != cplx{}) found.insert(i);
        recovered += found == truth;

        LassoOptions io = lo;
        io.solver = LassoSolver::ista;
        io.max_iter = 200;
        io.tol = 0.0;
        const auto ri = lasso(LassoSystem::from(m.A, data.d), io);
        for (size_t k = 1; k < ri.objective.size(); ++k) mono = mono && ri.objective[k] <= ri.objective[k - 1] * (1.0 + 1e-12);
    }
    o.check(mono, "ISTA objective monotone");
    o.check(recovered == 5, "K=5 support " + std::to_string(recovered) + "/5 seeds");

    // cross-range PSF against D/2
    const double lam = 0.005, r0 = 2.0, step = lam / 4.0;
    const double half = r0 * 0.5 / std::sqrt(0.75);
    SasConfig pc;
    pc.recording_time = 0.004;
    pc.speed = step / pc.recording_time;
    pc.pings = static_cast<Eigen::Index>(2.0 * half / step) + 1;
    const auto pg = build_geometry(pc);
    const double yc = 0.5 * double(pc.pings - 1) * step;
    const FrequencyGrid tone{300e3, 300e3, 1e3};
    const double D = 0.1;
    const SasGrid cut{r0, 0.1, 1, yc - D, D / 200.0, 401, 0.0};
    const auto pm = build_sensing_model(pg, cut.points(), tone);
    Eigen::MatrixX3d pt(1, 3);
    pt << r0, yc, 0.0;
    SasBeam beam;
    beam.omni = false;
    beam.length = D;
    const Eigen::VectorXd p = sas_cbf(simulate_measurements(pg, SasScene{pt, Eigen::VectorXcd::Ones(1)}, tone, 0.0, 0, beam), pm).cwiseAbs2();
    const double width = lobe_width(p, argmax_abs_vec(p)) * D / 200.0;
    o.check(std::abs(width / (D / 2.0) - 1.0) <= 0.15, "PSF width " + fmt(width) + " m vs D/2=" + fmt(D / 2.0));
    return o;
}

// 10. phase retrieval
Outcome phase_retrieval() {
    Outcome o;
    const Eigen::Index n = 64;
    int ok = 0;
    double worst = 0.0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Rng rng(s);
        const Eigen::VectorXcd x = complex_gaussian_vector(rng, n);
        const auto op = gaussian_sampling(8 * n, n, 1000 + s);
        const Eigen::VectorXd y = pr_forward(x, op);
        AmplitudeFlowOptions ao;
        ao.steps = 2000;
        const double d = pr_distance(amplitude_flow(y, op, spectral_init(y, op).x, ao).x, x);
        worst = std::max(worst, d);
        ok += d < 1e-5;
    }
    o.check(ok == 20, "recovered " + std::to_string(ok) + "/20 (worst " + fmt(worst) + ")");

    Rng rng(41);
    const auto op = gaussian_sampling(8 * n, n, 40);
    const Eigen::VectorXd y = pr_forward(complex_gaussian_vector(rng, n), op);
    double fd_err = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Eigen::VectorXcd x = complex_gaussian_vector(rng, n);
        const Eigen::VectorXcd v = complex_gaussian_vector(rng, n).normalized();
        const double h = 1e-6;
        const double fd = (amplitude_objective(x + h * v, y, op) - amplitude_objective(x - h * v, y, op)) / (2.0 * h);
        const double an = amplitude_gradient(x, y, op).dot(v).real();
        fd_err = std::max(fd_err, std::abs(fd - an) / std::abs(an));
    }
    o.check(fd_err < 1e-5, "gradient check rel error " + fmt(fd_err));

    bool mono = true;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        Rng r1(70 + s), r2(90 + s);
        const Eigen::VectorXcd x = complex_gaussian_vector(r1, n);
        const auto cop = random_coded_masks(n, 4, 80 + s);
        const auto r = error_reduction(pr_forward(x, cop), cop, complex_gaussian_vector(r2, n));
        for (size_t k = 1; k < r.residual.size(); ++k) mono = mono && r.residual[k] <= r.residual[k - 1] * (1.0 + 1e-12);
    }
    o.check(mono, "error-reduction residual monotone");
    return o;
}

// exhaustive search for the zero-redundancy 4-element ruler of largest aperture
std::vector<int> mrla_oracle4() {
    std::vector<int> best;
    for (int a = 1; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b)
            for (int c = b + 1; c <= 6; ++c) {
                const std::vector<int> p{0, a, b, c};
                std::set<int> diffs;
                for (size_t i = 0; i < 4; ++i)
                    for (size_t j = i + 1; j < 4; ++j) diffs.insert(p[j] - p[i]);
                if (int(diffs.size()) == c && (best.empty() || c > best.back() || (c == best.back() && p < best))) best = p;
            }
    return best;
}

// 11. radiometry
Outcome radiometry() {
    Outcome o;
    auto pm = blank_map();
    pm.points.push_back({0.0, 0.0, 300.0});
    UvLattice lat;
    lat.half = 16;
    const Eigen::VectorXcd V = visibility_samples(pm, lat.baselines());
    const double spread = (V.cwiseAbs().array() - V.cwiseAbs().mean()).abs().maxCoeff();
    o.check(spread <= 1e-9, "boresight |V| spread " + fmt(spread));

    auto blob = [](double l, double m) { return 100.0 * std::exp(-((l - 0.2) * (l - 0.2) + (m + 0.1) * (m + 0.1)) / (2.0 * 0.15 * 0.15)); };
    const auto map = map_from_direction_cosines(blob);
    const auto img = invert_visibilities(visibility_lattice(map, lat), lat);
    double e = 0.0, nn = 0.0;
    for (Eigen::Index i = 0; i < img.B.rows(); ++i)
        for (Eigen::Index k = 0; k < img.B.cols(); ++k) {
            const double t = img.l(i) * img.l(i) + img.m(k) * img.m(k) < 1.0 ? blob(img.l(i), img.m(k)) : 0.0;
            e += std::pow(img.B(i, k) - t, 2);
            nn += t * t;
        }
    const double l2 = std::sqrt(e / nn);
    o.check(l2 < 0.05, "round trip L2 " + fmt(l2));
    const auto got = mrla_spacings(4), want = mrla_oracle4();
    o.check(got == want && got == std::vector<int>{0, 1, 4, 6}, "MRLA(4) matches exhaustive oracle");
    return o;
}

// 12. QSAR error rates and ADC SNR
Outcome qsar_adc() {
    Outcome o;
    const auto z = qsar_error_rates(0.0);
    o.check(z.classical == 0.5 && z.quantum == 0.5, "eps_c=eps_q=0.5 at SNR 0");
    double worst = 0.0;
    for (int i = -30; i <= 20; ++i) {
        const double s = std::pow(10.0, i / 10.0);
        const double a = qsar_error_rates(s).quantum, b = qsar_error_rates(4.0 * s).classical;
        worst = std::max(worst, std::abs(a - b) / std::max(b, 1e-300));
    }
    o.check(worst < 1e-12, "eps_q(s)=eps_c(4s) rel error " + fmt(worst));
    const double snr = adc_metrics(12, 2.0).snr_ideal_db;
    o.check(std::abs(snr - 74.00) <= 0.01, "12-bit SNR " + fmt(snr, 6) + " dB");
    return o;
}

// 13. RMMSE unmasks a weak target 40 dB below a strong one
Outcome rmmse() {
    Outcome o;
    int pass = 0;
    std::string per;
    for (int seed = 1; seed <= 5; ++seed) {
        Rng rng(seed);
        const Eigen::Index n = 32, len = 128, is = 50, iw = 62;
        Eigen::VectorXcd code(n);
        for (Eigen::Index i = 0; i < n; ++i) code(i) = random_phasor(rng);
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(len);
        x(is) = 1.0;
        x(iw) = 0.01 * random_phasor(rng);
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(len + n - 1);
        for (Eigen::Index l = 0; l < len; ++l) y.segment(l, n) += x(l) * code;
        y += complex_gaussian_vector(rng, y.size(), 1e-8);
        const auto r = rmmse_compress(y, code, {});
        auto margin = [&](const Eigen::VectorXcd& p) {
            double res = 0.0;
            for (Eigen::Index l = 22; l <= 90; ++l)
                if (std::abs(l - is) > 1 && std::abs(l - iw) > 1) res = std::max(res, std::abs(p(l)));
            return db20(std::abs(p(iw)) / res);
        };
        const double mf = margin(r.matched_filter), rm = margin(r.profile);
        const bool ok = mf < 20.0 && rm >= 20.0;
        pass += ok;
        per += (per.empty() ? "" : ",") + std::string("s") + std::to_string(seed) + " mf " + fmt(mf, 3) + "/rmmse " + fmt(rm, 3);
    }
    o.check(pass >= 4, std::to_string(pass) + "/5 seeds (" + per + ")");
    return o;
}

// 14. Lee filter on a flat speckled region
Outcome lee() {
    Outcome o;
    const double sigma = 0.1;
    const Eigen::MatrixXd y = Eigen::MatrixXd::Constant(128, 128, 3.0);
    const Eigen::MatrixXd z = apply_speckle(y, sigma, 21);
    const Eigen::MatrixXd f = lee_filter(z, 7, sigma);
    auto var = [](const Eigen::MatrixXd& a) { return (a.array() - a.mean()).square().mean(); };
    o.check(var(f) <= 0.5 * var(z), "variance ratio " + fmt(var(f) / var(z)));
    o.check(std::abs(f.mean() / z.mean() - 1.0) < 0.01, "mean ratio " + fmt(f.mean() / z.mean(), 7));
    return o;
}

// 15. every scenario twice with one seed: identical reports and manifests
Outcome determinism() {
    Outcome o;
    int same = 0, total = 0;
    for (const auto& sc : cli::scenarios()) {
        const std::string& name = sc.spec.name;
        const auto a = run_cli(name, json{{"seed", 7}}, "c15a_" + name);
        const auto b = run_cli(name, json{{"seed", 7}}, "c15b_" + name);
        ++total;
        bool ok = a.status == 0 && b.status == 0;
        if (ok) {
            ok = slurp(a.out / "report.json") == slurp(b.out / "report.json");
            for (const auto& art : a.report["artifacts"]) {
                const std::string p = art["path"].get<std::string>();
                ok = ok && slurp(a.out / p) == slurp(b.out / p) &&
                     cli::hex64(cli::fnv1a64(slurp(a.out / p))) == art["fnv1a64"].get<std::string>();
            }
        }
        if (!ok) o.check(false, name);
        same += ok;
    }
    o.check(same == total, std::to_string(same) + "/" + std::to_string(total) + " scenarios reproducible");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <aperture-forge binary>\n");
        return 2;
    }
    g_bin = fs::absolute(argv[1]).string();
    g_work = fs::temp_directory_path() / ("aperture-forge-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(g_work);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"sound-constants", sound_constants}, {"uniform-array", uniform_array}, {"far-field", far_field},
        {"ambiguity", ambiguity},             {"sar-point", sar_point},         {"tomography", tomography},
        {"squint", squint},                   {"sparse-lattice", sparse_lattice}, {"sas", sas},
        {"phase-retrieval", phase_retrieval}, {"radiometry", radiometry},       {"qsar-adc", qsar_adc},
        {"rmmse", rmmse},                     {"lee-filter", lee},              {"determinism", determinism},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.check(false, std::string("exception: ") + e.what());
        }
        failed += !r.pass;
        std::printf("%s %zu %s : %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.details.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(g_work);
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
