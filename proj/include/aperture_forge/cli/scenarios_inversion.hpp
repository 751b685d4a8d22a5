#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "../core.hpp"
#include "../inversion.hpp"
#include "context.hpp"

namespace aperture_forge::cli {

namespace detail {

inline Eigen::VectorXd iteration_axis(size_t n) {
    return Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), 0.0, static_cast<double>(n) - 1.0);
}

// Real field in [-1, 1] with a random spectrum inside a disc of `radius` bins.
inline Eigen::MatrixXd bandlimited_field(Rng& rng, Eigen::Index N, double radius) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j)
            if (std::hypot(static_cast<double>(i - N / 2), static_cast<double>(j - N / 2)) <= radius) U(i, j) = complex_gaussian(rng);
    const Eigen::MatrixXd f = fp_object(U).real();
    return f / f.cwiseAbs().maxCoeff();
}

}  // namespace detail

inline Scenario pr_recover_scenario() {
    ScenarioSpec s{"pr-recover", "inversion", true,
                   {int_param("n", 64), int_param("oversampling", 8), str_param("model", "gaussian"), num_param("noise_sigma", 0.0),
                    int_param("spectral_iterations", 100), int_param("steps", 2000), num_param("lr", 0.1), bool_param("backtracking", false),
                    num_param("tol", 0.0), int_param("er_iterations", 200), int_param("gradient_checks", 5)},
                   {"inversion.pr_forward", "inversion.spectral_init", "inversion.amplitude_flow", "inversion.error_reduction"}};
    return {s, [](ScenarioContext& c) {
                const Eigen::Index n = c.count("n", 1, 4096);
                const Eigen::Index L = c.count("oversampling", 1, 1024);
                const std::string model = c.cfg.str("model");
                if (model != "gaussian" && model != "coded") c.invalid("model", "\"model\" must be \"gaussian\" or \"coded\"");
                const double sigma = c.cfg.num("noise_sigma");
                if (sigma < 0.0) c.invalid("noise_sigma", "\"noise_sigma\" must be non-negative");
                auto& m = c.metrics;

                Rng rng(c.seed());
                const Eigen::VectorXcd x = complex_gaussian_vector(rng, n);
                const auto op = model == "gaussian" ? gaussian_sampling(L * n, n, c.seed() + 1) : random_coded_masks(n, L, c.seed() + 1);
                const Eigen::VectorXd y = pr_forward(x, op, sigma, c.seed() + 2);
                m.set("measurements", op.m());
                m.set("unknowns", n);

                const auto init = spectral_init(y, op, static_cast<int>(c.count("spectral_iterations", 1, 100000)), c.seed() + 3);
                m.set("spectral_distance", pr_distance(init.x, x));
                m.set("spectral_correlation", pr_correlation(init.x, x));

                AmplitudeFlowOptions o;
                o.steps = static_cast<int>(c.count("steps", 0, 10'000'000));
                o.lr = c.positive("lr");
                o.backtracking = c.cfg.flag("backtracking");
                o.tol = c.cfg.num("tol");
                const auto af = amplitude_flow(y, op, init.x, o);
                m.set("af_distance", pr_distance(af.x, x));
                m.set("af_iterations", af.iterations);
                m.set("af_aborted", af.aborted);
                m.set("af_objective_final", af.objective.back());
                c.out.csv("af_objective.csv", csv_columns({"iteration", "objective"}, {detail::iteration_axis(af.objective.size()), as_vector(af.objective)}));

                ErrorReductionOptions eo;
                eo.iterations = static_cast<int>(c.count("er_iterations", 0, 10'000'000));
                const auto er = error_reduction(y, op, init.x, eo);
                bool mono = true;
                for (size_t k = 1; k < er.residual.size(); ++k) mono = mono && er.residual[k] <= er.residual[k - 1] * (1.0 + 1e-10) + 1e-13;
                m.set("er_distance", pr_distance(er.x, x));
                m.set("er_residual_final", er.residual.back());
                m.set("er_monotone", mono);
                c.out.csv("er_residual.csv", csv_columns({"iteration", "residual"}, {detail::iteration_axis(er.residual.size()), as_vector(er.residual)}));

                // analytic gradient against central differences at random points
                double worst = 0.0;
                for (Eigen::Index k = 0; k < c.count("gradient_checks", 0, 1000); ++k) {
                    const Eigen::VectorXcd p = complex_gaussian_vector(rng, n);
                    const Eigen::VectorXcd v = complex_gaussian_vector(rng, n).normalized();
                    const double h = 1e-6;
                    const double fd = (amplitude_objective(p + h * v, y, op) - amplitude_objective(p - h * v, y, op)) / (2.0 * h);
                    const double an = amplitude_gradient(p, y, op).dot(v).real();
                    worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-300));
                }
                m.set("gradient_fd_max_rel_error", worst);

                const cplx ph = x.dot(af.x) / std::max(std::abs(x.dot(af.x)), 1e-300);
                const Eigen::VectorXcd xa = af.x / ph;
                c.out.csv("signal.csv", csv_columns({"re_true", "im_true", "re_est", "im_est"},
                                                    {x.real(), x.imag(), xa.real(), xa.imag()}));
            }};
}

inline Scenario fp_demo_scenario() {
    ScenarioSpec s{"fp-demo", "inversion", true,
                   {int_param("hi", 64), int_param("lo", 32), num_param("pupil_radius", 8.0), int_param("led_half", 1), int_param("led_step", 5),
                    int_param("sweeps", 50), num_param("noise_sigma", 0.0), num_param("object_radius", 10.0), num_param("min_overlap", 0.6),
                    num_param("dynamic_range_db", 60.0)},
                   {"inversion.fp_acquire", "inversion.fp_recover"}};
    return {s, [](ScenarioContext& c) {
                FpSystem sys;
                sys.hi = c.count("hi", 2, 4096);
                sys.lo = c.count("lo", 2, sys.hi);
                sys.pupil_radius = c.positive("pupil_radius");
                sys.offsets = fp_led_grid(static_cast<int>(c.count("led_half", 0, 64)), static_cast<int>(c.count("led_step", 1, 4096)));
                sys.min_overlap = c.cfg.num("min_overlap");
                try {
                    sys.validate();
                } catch (const std::invalid_argument& e) {
                    c.invalid("lo", e.what());
                }
                const double sigma = c.cfg.num("noise_sigma");
                if (sigma < 0.0) c.invalid("noise_sigma", "\"noise_sigma\" must be non-negative");
                const double dr_db = c.positive("dynamic_range_db");
                auto& m = c.metrics;

                Rng rng(c.seed());
                const double rad = c.positive("object_radius");
                const Eigen::MatrixXd a = detail::bandlimited_field(rng, sys.hi, rad), p = detail::bandlimited_field(rng, sys.hi, rad);
                Eigen::MatrixXcd u(sys.hi, sys.hi);
                for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = std::polar(1.0 + 0.5 * a(i), p(i));

                const auto imgs = fp_acquire_all(sys, u, sigma, c.seed() + 1);
                const auto r = fp_recover(imgs, sys, static_cast<int>(c.count("sweeps", 1, 100000)));
                const Eigen::MatrixXcd U = fp_spectrum(u);
                m.set("leds", static_cast<Eigen::Index>(sys.offsets.size()));
                m.set("pupil_radius", sys.pupil_radius);
                m.set("synthetic_radius", sys.synthetic_radius());
                m.set("min_overlap", r.min_overlap);
                m.set("reliable", r.reliable);
                m.set("spectrum_error", fp_spectrum_error(r.spectrum, U, fp_covered_band(sys)));
                m.set("residual_first", r.residual.front());
                m.set("residual_final", r.residual.back());
                m.set("support_radius_measured", fp_measured_support_radius(r.spectrum));

                c.out.image("object_amplitude", u.cwiseAbs(), dr_db, ImageScale::magnitude);
                c.out.image("recovered_amplitude", r.object.cwiseAbs(), dr_db, ImageScale::magnitude);
                c.out.image("recovered_spectrum", r.spectrum.cwiseAbs(), dr_db, ImageScale::magnitude);
                c.out.image("raw_on_axis", imgs[sys.offsets.size() / 2], dr_db, ImageScale::power);
                c.out.csv("residual.csv", csv_columns({"sweep", "residual"}, {detail::iteration_axis(r.residual.size()), as_vector(r.residual)}));
            }};
}

}  // namespace aperture_forge::cli
