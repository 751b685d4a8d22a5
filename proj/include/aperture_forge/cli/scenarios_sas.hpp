#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../core.hpp"
#include "../sas.hpp"
#include "context.hpp"

namespace aperture_forge::cli {

inline Scenario sas_recon_scenario() {
    ScenarioSpec s{"sas-recon", "sas", true,
                   {num_param("speed", 2.0), num_param("recording_time", 0.02), int_param("pings", 32), nums_param("tx_offsets", {0.0}),
                    nums_param("rx_offsets", {0.0, 0.02, 0.04, 0.06}), num_param("sound_speed", speed_of_sound_water), num_param("altitude", 0.0),
                    num_param("f_start", 90e3), num_param("f_stop", 110e3), num_param("df", 400.0), num_param("grid_x0", 8.0),
                    num_param("grid_dx", 0.1), int_param("grid_nx", 16), num_param("grid_y0", 0.0), num_param("grid_dy", 0.1),
                    int_param("grid_ny", 16), int_param("targets", 5), num_param("snr_db", 20.0), num_param("mu", 0.0), str_param("solver", "fista"),
                    int_param("max_iter", 2000), num_param("tol", 1e-6), int_param("ista_iterations", 200), bool_param("directional_beam", false),
                    num_param("transducer_length", 0.1), num_param("dynamic_range_db", 40.0)},
                   {"sas.build_geometry", "sas.build_sensing_model", "sas.simulate_measurements", "sas.sas_cbf", "sas.sas_image", "sas.sas_sparse",
                    "sas.lasso", "sas.sas_resolutions"}};
    return {s, [](ScenarioContext& c) {
                SasConfig sc;
                sc.speed = c.positive("speed");
                sc.recording_time = c.positive("recording_time");
                sc.pings = c.count("pings", 1, 100000);
                sc.tx_offsets = c.cfg.nums("tx_offsets");
                sc.rx_offsets = c.cfg.nums("rx_offsets");
                sc.sound_speed = c.positive("sound_speed");
                sc.altitude = c.cfg.num("altitude");
                FrequencyGrid band{c.positive("f_start"), c.positive("f_stop"), c.positive("df")};
                try {
                    band.validate();
                } catch (const std::invalid_argument& e) {
                    c.invalid("df", e.what());
                }
                SasGrid grid{c.cfg.num("grid_x0"), c.positive("grid_dx"), c.count("grid_nx", 1, 4096),
                             c.cfg.num("grid_y0"), c.positive("grid_dy"), c.count("grid_ny", 1, 4096), 0.0};
                const Eigen::Index K = c.count("targets", 1, grid.size());
                const std::string solver = c.cfg.str("solver");
                if (solver != "fista" && solver != "ista") c.invalid("solver", "\"solver\" must be \"fista\" or \"ista\"");
                const double dr_db = c.positive("dynamic_range_db");
                SasBeam beam{!c.cfg.flag("directional_beam"), c.positive("transducer_length")};
                auto& m = c.metrics;

                const auto g = build_geometry(sc);
                const Eigen::MatrixX3d pts = grid.points();
                const auto model = build_sensing_model(g, pts, band);
                m.set("max_range_m", sas_max_range(sc.recording_time, sc.sound_speed));
                m.set("model_rows", model.rows());
                m.set("model_cols", model.cols());

                Rng rng(c.seed());
                std::set<Eigen::Index> truth;
                std::uniform_int_distribution<Eigen::Index> pick(0, grid.size() - 1);
                while (static_cast<Eigen::Index>(truth.size()) < K) truth.insert(pick(rng));
                SasScene scene{pts, Eigen::VectorXcd::Zero(grid.size())};
                for (auto i : truth) scene.s(i) = random_phasor(rng);
                const double signal = simulate_measurements(g, scene, band, 0.0, 0, beam).d.squaredNorm() / static_cast<double>(model.rows());
                const double sigma = std::sqrt(signal / from_db10(c.cfg.num("snr_db")));
                const auto data = simulate_measurements(g, scene, band, sigma, c.seed() + 1, beam);
                m.set("noise_sigma", sigma);

                const Eigen::VectorXcd cbf = sas_cbf(data, model);
                Eigen::Index cpk = 0;
                cbf.cwiseAbs().maxCoeff(&cpk);
                m.set("cbf_peak_on_target", truth.count(cpk) == 1);
                c.out.image("cbf", sas_image(cbf, grid), dr_db, ImageScale::magnitude);

                const auto sys = LassoSystem::from(model.A, data.d);
                LassoOptions o;
                o.mu = c.cfg.num("mu");
                if (o.mu < 0.0) c.invalid("mu", "\"mu\" must be non-negative");
                if (o.mu == 0.0) o.mu = lasso_mu_noise(sigma, model.rows(), model.cols());
                o.solver = solver == "fista" ? LassoSolver::fista : LassoSolver::ista;
                o.max_iter = static_cast<int>(c.count("max_iter", 1, 1'000'000));
                o.tol = c.cfg.num("tol");
                o.lipschitz = lipschitz_estimate_gram(sys.G);
                const auto r = sas_sparse(data, model, o);
                std::set<Eigen::Index> found;
                for (Eigen::Index i = 0; i < r.s.size(); ++i)
                    if (r.s(i) != cplx{}) found.insert(i);
                std::vector<long long> tv(truth.begin(), truth.end()), fv(found.begin(), found.end());
                Eigen::Index hits = 0;
                for (auto i : found) hits += truth.count(i) ? 1 : 0;
                m.set("mu", o.mu);
                m.set("lipschitz", *o.lipschitz);
                m.set("support_truth", tv);
                m.set("support_found", fv);
                m.set("support_exact", found == truth);
                m.set("false_positives", static_cast<Eigen::Index>(found.size()) - hits);
                m.set("misses", K - hits);
                m.set("iterations", r.iterations);
                m.set("converged", r.converged);
                m.set("objective_final", r.objective.back());
                c.out.image("sparse", sas_image(r.s, grid), dr_db, ImageScale::magnitude);
                c.out.csv("objective.csv", csv_columns({"iteration", "objective"},
                                                       {Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(r.objective.size()), 0.0,
                                                                                   static_cast<double>(r.objective.size() - 1)),
                                                        as_vector(r.objective)}));

                // ISTA monotonicity and FISTA versus ISTA on a common budget
                LassoOptions q = o;
                q.max_iter = static_cast<int>(c.count("ista_iterations", 1, 1'000'000));
                q.tol = 0.0;
                q.solver = LassoSolver::ista;
                const auto ri = lasso(sys, q);
                bool mono = true;
                for (size_t k = 1; k < ri.objective.size(); ++k) mono = mono && ri.objective[k] <= ri.objective[k - 1] * (1.0 + 1e-12);
                q.solver = LassoSolver::fista;
                const auto rf = lasso(sys, q);
                m.set("ista_monotone", mono);
                m.set("ista_objective", ri.objective.back());
                m.set("fista_objective", rf.objective.back());
                m.set("fista_not_worse", rf.objective.back() <= ri.objective.back());

                const double fc = 0.5 * (band.f_start + band.f_stop);
                const double r0 = grid.x(grid.nx / 2);
                const auto res = sas_resolutions(band.bandwidth(), beam.length, sc.sound_speed / fc, r0, sc.sound_speed);
                m.set("range_resolution_m", res.range);
                m.set("cross_range_resolution_m", res.cross_range);
                m.set("synthetic_aperture_m", res.sa_length);
            }};
}

}  // namespace aperture_forge::cli
