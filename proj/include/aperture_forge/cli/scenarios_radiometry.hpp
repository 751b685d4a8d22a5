#pragma once

#include <cmath>
#include <vector>

#include "../core.hpp"
#include "../radiometry.hpp"
#include "context.hpp"

namespace aperture_forge::cli {

inline Scenario radiometry_roundtrip_scenario() {
    ScenarioSpec s{"radiometry-roundtrip", "radiometry", false,
                   {num_param("blob_peak", 100.0), num_param("blob_width", 0.15), num_param("blob_l", 0.2), num_param("blob_m", -0.1),
                    int_param("lattice_half", 16), num_param("lattice_spacing", 0.5), int_param("n_theta", 90), int_param("n_phi", 360),
                    bool_param("clip_negative", false), num_param("point_temperature", 300.0), int_param("mrla_elements", 4),
                    num_param("wavelength", 0.21), num_param("flux_density", 3e-20), num_param("bandwidth", 20e6),
                    num_param("dynamic_range_db", 30.0)},
                   {"radiometry.measured_temperature", "radiometry.visibility_samples", "radiometry.visibility_lattice",
                    "radiometry.invert_visibilities", "radiometry.mrla_spacings", "radiometry.linear_array_baselines",
                    "radiometry.incident_power", "radiometry.brightness_temperature"}};
    return {s, [](ScenarioContext& c) {
                const double peak = c.positive("blob_peak"), w = c.positive("blob_width");
                const double l0 = c.cfg.num("blob_l"), m0 = c.cfg.num("blob_m");
                if (l0 * l0 + m0 * m0 >= 1.0) c.invalid("blob_l", "blob centre must lie inside the unit disc");
                UvLattice lat;
                lat.half = c.count("lattice_half", 1, 512);
                lat.spacing = c.positive("lattice_spacing");
                if (lat.spacing > 0.5) c.invalid("lattice_spacing", "baseline steps above half a wavelength alias the visible disc");
                const Eigen::Index nt = c.count("n_theta", 1, 10000), np = c.count("n_phi", 1, 10000);
                const double dr_db = c.positive("dynamic_range_db");
                auto& m = c.metrics;

                auto blob = [&](double l, double mm) { return peak * std::exp(-((l - l0) * (l - l0) + (mm - m0) * (mm - m0)) / (2.0 * w * w)); };
                const auto map = map_from_direction_cosines(blob, nt, np);
                const double tm = measured_temperature(map);
                const Eigen::MatrixXcd V = visibility_lattice(map, lat);
                const cplx v0 = V(lat.half, lat.half);
                m.set("measured_temperature_k", tm);
                m.set("zero_baseline_visibility", v0.real());
                m.set("zero_baseline_rel_error", std::abs(v0 - tm) / tm);

                const auto img = invert_visibilities(V, lat, c.cfg.flag("clip_negative"));
                Eigen::MatrixXd truth(img.B.rows(), img.B.cols());
                double e = 0.0, n = 0.0;
                for (Eigen::Index i = 0; i < truth.rows(); ++i)
                    for (Eigen::Index k = 0; k < truth.cols(); ++k) {
                        truth(i, k) = img.l(i) * img.l(i) + img.m(k) * img.m(k) < 1.0 ? blob(img.l(i), img.m(k)) : 0.0;
                        e += std::pow(img.B(i, k) - truth(i, k), 2);
                        n += truth(i, k) * truth(i, k);
                    }
                m.set("roundtrip_l2_error", std::sqrt(e / n));
                m.set("max_imag", img.max_imag);
                m.set("min_value", img.min_value);
                m.set("negative_fraction", img.negative_fraction);
                m.set("clipped", img.clipped);
                c.out.image("brightness_truth", truth, dr_db, ImageScale::power);
                c.out.image("brightness_recovered", img.B.cwiseMax(0.0), dr_db, ImageScale::power);
                c.out.image("brightness_received", img.received().cwiseMax(0.0), dr_db, ImageScale::power);

                // boresight point source: flat visibility
                auto pm = blank_map(nt, np);
                const double tp = c.positive("point_temperature");
                pm.points.push_back({0.0, 0.0, tp});
                const Eigen::VectorXcd vp = visibility_samples(pm, lat.baselines());
                m.set("point_visibility_spread", (vp.array() - cplx{tp, 0.0}).abs().maxCoeff());

                const int ne = static_cast<int>(c.count("mrla_elements", 2, 7));
                const auto pos = mrla_spacings(ne);
                m.set("mrla_positions", std::vector<long long>(pos.begin(), pos.end()));
                m.set("mrla_redundancy", redundancy(pos));
                m.set("mrla_covers_all_spacings", covers_all_spacings(pos));
                const double lam = c.positive("wavelength");
                const auto bl = linear_array_baselines(pos, lam);
                m.set("mrla_baselines", static_cast<Eigen::Index>(bl.uv.size()));
                const Eigen::VectorXcd vl = visibility_samples(map, bl);
                Eigen::VectorXd bu(vl.size());
                for (Eigen::Index i = 0; i < vl.size(); ++i) bu(i) = bl.uv[static_cast<size_t>(i)].u;
                c.out.csv("mrla_visibilities.csv", csv_columns({"u", "re", "im"}, {bu, vl.real(), vl.imag()}));

                const double bw = c.positive("bandwidth");
                const double p = incident_power(c.positive("flux_density"), lam, bw);
                m.set("incident_power_w", p);
                m.set("brightness_temperature_k", brightness_temperature(p, bw));
            }};
}

}  // namespace aperture_forge::cli
