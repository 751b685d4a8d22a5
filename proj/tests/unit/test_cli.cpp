// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <aperture_forge/cli.hpp>
#include <aperture_forge/sar.hpp>
#include <aperture_forge/sounding.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using namespace aperture_forge;
using namespace aperture_forge::cli;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* b = std::getenv("APERTURE_FORGE_BIN");
    return b ? b : "";
}

fs::path scratch(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("af-cli-" + std::to_string(::getpid()) + "-" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Invocation {
    int status = -1;
    std::string out, err;
};

Invocation invoke(const fs::path& dir, const std::string& args) {
    const std::string cmd = "\"" + binary() + "\" " + args + " > \"" + (dir / "stdout").string() + "\" 2> \"" + (dir / "stderr").string() + "\"";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(dir / "stdout"), slurp(dir / "stderr")};
}

fs::path write_config(const fs::path& dir, const json& doc, const std::string& name = "config.json") {
    std::ofstream(dir / name) << doc.dump();
    return dir / name;
}

Invocation run_scenario(const fs::path& dir, const std::string& scenario, const json& doc, const std::string& extra = "") {
    const auto cfg = write_config(dir, doc);
    return invoke(dir, scenario + " --config \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\" " + extra);
}

json report(const fs::path& dir) { return json::parse(slurp(dir / "out" / "report.json")); }

}  // namespace

TEST_CASE("binary is available", "[cli]") { REQUIRE_FALSE(binary().empty()); }

TEST_CASE("sound-constants reports the sounder constants", "[cli][run]") {
    const auto dir = scratch("constants");
    const auto r = run_scenario(dir, "sound-constants", json::object());
    REQUIRE(r.status == 0);
    const auto j = report(dir);
    const auto& m = j["metrics"];
    const double B = 13.5e9;
    CHECK(m["tones"] == 1351);
    CHECK(m["delay_resolution_ps"].get<double>() == Approx(1e12 / B).epsilon(1e-9));
    CHECK(m["range_resolution_m"].get<double>() == Approx(speed_of_light / B).epsilon(1e-9));
    CHECK(m["t_dur_ns"].get<double>() == Approx(100.0).epsilon(1e-9));
    CHECK(m["bandpass_ratio"].get<double>() == Approx(40.0 / 13.5).epsilon(1e-12));
    CHECK(m["bandpass_ok"] == true);
    CHECK(m["far_field_m"].get<double>() == Approx(2.0 * 0.102 * 0.102 * 40e9 / speed_of_light).epsilon(1e-12));
    CHECK(j["seed"].is_null());
    CHECK(j["scenario"] == "sound-constants");

    const json summary = json::parse(r.out);
    CHECK(summary["report_fnv1a64"] == hex64(fnv1a64(slurp(dir / "out" / "report.json"))));
    CHECK(fs::exists(dir / "out" / "timing.json"));
    for (const auto& a : j["artifacts"]) CHECK(a["path"] != "timing.json");
}

TEST_CASE("config errors map to exit codes", "[cli][errors]") {
    const auto dir = scratch("errors");

    SECTION("unknown top-level key") {
        const auto r = run_scenario(dir, "sound-constants", json{{"foo", 1}});
        CHECK(r.status == 5);
        const auto e = json::parse(r.err);
        CHECK(e["error"] == "unknown_key");
        CHECK(e["key"] == "foo");
    }
    SECTION("unknown parameter inside the module block") {
        const auto r = run_scenario(dir, "sound-constants", json{{"sounding", {{"foo", 1}}}});
        CHECK(r.status == 5);
        CHECK(json::parse(r.err)["key"] == "sounding.foo");
    }
    SECTION("stochastic scenario without a seed") {
        const auto r = run_scenario(dir, "sar-point", json::object());
        CHECK(r.status == 7);
        CHECK(json::parse(r.err)["error"] == "missing_seed");
    }
    SECTION("--seed satisfies a stochastic scenario") {
        const auto r = run_scenario(dir, "sar-speckle", json::object(), "--seed 3");
        CHECK(r.status == 0);
        CHECK(report(dir)["provenance"]["seed"] == "cli");
    }
    SECTION("type mismatch") {
        const auto r = run_scenario(dir, "sound-constants", json{{"sounding", {{"lattice_n", "35"}}}});
        CHECK(r.status == 6);
        CHECK(json::parse(r.err)["key"] == "sounding.lattice_n");
    }
    SECTION("integer parameter given a fraction") {
        const auto r = run_scenario(dir, "sound-constants", json{{"sounding", {{"lattice_n", 3.5}}}});
        CHECK(r.status == 6);
    }
    SECTION("unknown scenario") {
        const auto cfg = write_config(dir, json::object());
        const auto r = invoke(dir, "no-such-scenario --config \"" + cfg.string() + "\"");
        CHECK(r.status == 9);
        CHECK(r.err.find("sar-point") != std::string::npos);
    }
    SECTION("malformed JSON") {
        std::ofstream(dir / "bad.json") << "{\"seed\": ";
        const auto r = invoke(dir, "sound-constants --config \"" + (dir / "bad.json").string() + "\"");
        CHECK(r.status == 4);
    }
    SECTION("missing config file") {
        const auto r = invoke(dir, "sound-constants --config \"" + (dir / "absent.json").string() + "\"");
        CHECK(r.status == 3);
    }
    SECTION("missing --config is a usage error") {
        const auto r = invoke(dir, "sound-constants");
        CHECK(r.status == 2);
    }
    SECTION("invalid value") {
        const auto r = run_scenario(dir, "sound-constants", json{{"sounding", {{"aperture", -1.0}}}});
        CHECK(r.status == 8);
    }
    SECTION("config naming another scenario") {
        const auto r = run_scenario(dir, "sound-constants", json{{"scenario", "sar-point"}});
        CHECK(r.status == 8);
        CHECK(json::parse(r.err)["key"] == "scenario");
    }
}

TEST_CASE("provenance records default, config and cli sources", "[cli][config]") {
    const auto& spec = find_scenario("sar-point").spec;
    const json doc{{"seed", 5}, {"out", "somewhere"}, {"sar", {{"pulses", 32}}}};
    const auto cfg = resolve_config(doc, spec, Overrides{std::nullopt, fs::path("elsewhere")});
    CHECK(cfg.provenance.at("seed") == "config");
    CHECK(cfg.provenance.at("out") == "cli");
    CHECK(cfg.out_dir == fs::path("elsewhere"));
    CHECK(cfg.provenance.at("sar.pulses") == "config");
    CHECK(cfg.provenance.at("sar.carrier") == "default");
    CHECK(cfg.integer("pulses") == 32);
    CHECK(cfg.num("carrier") == 10e9);
    for (const auto& p : spec.params) CHECK(cfg.provenance.count("sar." + p.name) == 1);

    const auto over = resolve_config(doc, spec, Overrides{std::uint64_t{9}, std::nullopt});
    CHECK(*over.seed == 9);
    CHECK(over.provenance.at("seed") == "cli");
    CHECK(over.provenance.at("out") == "config");
}

TEST_CASE("sar-point metrics agree with direct module calls", "[cli][run]") {
    const auto dir = scratch("sar");
    REQUIRE(run_scenario(dir, "sar-point", json{{"seed", 4}}).status == 0);
    const auto m = report(dir)["metrics"];

    SarParams p;
    p.carrier = 10e9;
    p.chirp = LfmChirp{0.4e-6, 150e6};
    p.sample_rate = 300e6;
    p.prf = 400.0;
    p.velocity = 100.0;
    p.pulses = 64;
    p.samples = 256;
    p.near_range = 480.0;
    const auto L = native_lattice(p);
    const auto law = sar_resolutions(p, L.r(120), 1.0);
    CHECK(m["range_res_theory"].get<double>() == Approx(law.range).epsilon(1e-12));
    CHECK(m["xr_res_theory"].get<double>() == Approx(law.cross_range).epsilon(1e-12));
    CHECK(m["aperture_length"].get<double>() == Approx(law.aperture_length).epsilon(1e-12));
    // independent closed forms
    CHECK(law.range == Approx(speed_of_light / (2.0 * 150e6)).epsilon(1e-12));
    CHECK(law.aperture_length == Approx(100.0 * 64 / 400.0).epsilon(1e-12));

    SarScene point;
    point.scatterers = {{L.x(32), L.r(120), 1.0}};
    const auto img = backproject(simulate_phase_history(point, p, 4), L);
    const auto pk = argmax_abs(img.pixels.data);
    CHECK(m["peak_pixel"] == json::array({pk.row, pk.col}));
    CHECK(m["peak_exact"] == true);
}

TEST_CASE("same seed gives byte-identical reports", "[cli][determinism]") {
    for (const std::string sc : {"sas-recon", "waveform-ambiguity"}) {
        const auto a = scratch(sc + "-a"), b = scratch(sc + "-b"), c = scratch(sc + "-c");
        REQUIRE(run_scenario(a, sc, json{{"seed", 11}}).status == 0);
        REQUIRE(run_scenario(b, sc, json{{"seed", 11}}).status == 0);
        REQUIRE(run_scenario(c, sc, json{{"seed", 12}}).status == 0);
        const std::string ra = slurp(a / "out" / "report.json");
        CHECK(ra == slurp(b / "out" / "report.json"));
        CHECK(ra != slurp(c / "out" / "report.json"));
        for (const auto& art : report(a)["artifacts"]) {
            const std::string bytes = slurp(a / "out" / art["path"].get<std::string>());
            CHECK(art["bytes"] == bytes.size());
            CHECK(art["fnv1a64"] == hex64(fnv1a64(bytes)));
        }
    }
}

TEST_CASE("emit flags suppress artifacts", "[cli][run]") {
    const auto dir = scratch("emit");
    REQUIRE(run_scenario(dir, "sar-speckle", json{{"seed", 1}, {"emit", {{"images", false}, {"csv", false}}}}).status == 0);
    CHECK(report(dir)["artifacts"].empty());
    const auto bad = run_scenario(dir, "sar-speckle", json{{"seed", 1}, {"emit", {{"pdf", true}}}});
    CHECK(bad.status == 5);
}

TEST_CASE("PGM rendering", "[cli][render]") {
    SECTION("constant input is all white") {
        const auto img = read_pgm(render_pgm(Eigen::MatrixXd::Constant(3, 4, 0.7), 30.0, ImageScale::magnitude));
        CHECK(img.rows() == 3);
        CHECK(img.cols() == 4);
        CHECK((img.array() == 255).all());
    }
    SECTION("dynamic range maps linearly and clips below the floor") {
        Eigen::MatrixXd g(1, 4);
        g << 0.0, -10.0, -20.0, -35.0;
        const auto img = read_pgm(render_pgm(g, 20.0));
        CHECK(img(0, 0) == 255);
        CHECK(img(0, 1) == 128);
        CHECK(img(0, 2) == 0);
        CHECK(img(0, 3) == 0);
    }
    SECTION("power and magnitude scales") {
        Eigen::MatrixXd g(1, 2);
        g << 1.0, 0.1;
        CHECK(read_pgm(render_pgm(g, 20.0, ImageScale::power))(0, 1) == 128);
        CHECK(read_pgm(render_pgm(g, 20.0, ImageScale::magnitude))(0, 1) == 0);
        g(1) = 0.0;
        CHECK(read_pgm(render_pgm(g, 20.0, ImageScale::power))(0, 1) == 0);
    }
    SECTION("bad inputs throw") {
        CHECK_THROWS_AS(render_pgm(Eigen::MatrixXd(0, 0), 30.0), std::invalid_argument);
        CHECK_THROWS_AS(render_pgm(Eigen::MatrixXd::Ones(2, 2), 0.0), std::invalid_argument);
        Eigen::MatrixXd n = Eigen::MatrixXd::Ones(2, 2);
        n(1, 1) = std::nan("");
        CHECK_THROWS_AS(render_pgm(n, 30.0), std::invalid_argument);
    }
    SECTION("render_image writes the graymap and a bit-exact CSV") {
        const auto dir = scratch("render");
        Eigen::MatrixXd g(2, 2);
        g << 0.1, 1.0 / 3.0, -2.5e-17, 123456.789;
        render_image(g, dir / "img.pgm", 40.0, ImageScale::magnitude);
        CHECK(read_pgm(slurp(dir / "img.pgm")).rows() == 2);
        CHECK(read_csv_matrix(slurp(dir / "img.csv")) == g);
    }
}

TEST_CASE("checksum is FNV-1a 64", "[cli][artifacts]") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(hex64(fnv1a64("foobar")) == "85944171f73967e8");
}

TEST_CASE("scenario operations cover every module operation", "[cli][coverage]") {
    const std::vector<std::string> required{
        "core.convert_direction", "core.plane_wave_field", "core.spherical_wave_field", "core.far_field_distance", "core.wavenumber_spectrum",
        "waveforms.sample_lfm", "waveforms.matched_filter", "waveforms.ambiguity_surface", "waveforms.lfm_ambiguity_closed_form",
        "waveforms.pulse_shape_ir", "waveforms.bfsk_modulate", "waveforms.iq_demodulate", "waveforms.adc_metrics", "waveforms.rmmse_compress",
        "sar.simulate_phase_history", "sar.sar_resolutions", "sar.backproject", "sar.tomographic_reconstruct", "sar.omega_k_focus",
        "sar.chirp_scaling_focus", "sar.capon_image", "sar.apply_speckle", "sar.lee_filter", "sar.qsar_metrics",
        "sounding.synthesize_sweep", "sounding.two_ray_path_loss", "sounding.array_factor", "sounding.steering_vector", "sounding.padp",
        "sounding.delay_slice", "sounding.spherical_padp", "sounding.fib_weights", "sounding.sampling_checks", "sounding.friis_range",
        "sounding.optimize_sparse_lattice",
        "sas.build_geometry", "sas.simulate_measurements", "sas.sas_cbf", "sas.sas_sparse", "sas.sas_resolutions",
        "inversion.pr_forward", "inversion.spectral_init", "inversion.amplitude_flow", "inversion.error_reduction", "inversion.fp_acquire",
        "radiometry.measured_temperature", "radiometry.visibility_samples", "radiometry.invert_visibilities", "radiometry.mrla_spacings",
        "cli.parse_config", "cli.run", "cli.render_image"};
    std::set<std::string> have;
    for (const auto& s : scenarios())
        for (const auto& op : s.spec.operations) have.insert(op);
    for (const auto& op : cli_operations()) have.insert(op);
    for (const auto& op : required) {
        INFO(op);
        CHECK(have.count(op) == 1);
    }
    CHECK(scenarios().size() == 14);
}

TEST_CASE("sound-padp sweep round trip through a file", "[cli][sounding]") {
    const json small{{"seed", 2},
                     {"sounding", {{"f_stop", 27.5e9}, {"lattice_n", 4}, {"uv_points", 16}, {"aggregate_uv_points", 8}, {"write_sweep", true}}}};
    const auto a = scratch("sweep-a");
    REQUIRE(run_scenario(a, "sound-padp", small).status == 0);
    const auto ra = report(a);
    CHECK(ra["metrics"]["sweep_source"] == "synthesized");
    REQUIRE(fs::exists(a / "out" / "sweep.csv"));

    std::ifstream in(a / "out" / "sweep.csv");
    const auto sw = read_sweep_csv(in);
    CHECK(sw.s21.cols() == 101);
    CHECK(sw.s21.rows() == 16);

    json reread = small;
    reread["sounding"]["write_sweep"] = false;
    reread["sounding"]["sweep_file"] = (a / "out" / "sweep.csv").string();
    const auto b = scratch("sweep-b");
    REQUIRE(run_scenario(b, "sound-padp", reread).status == 0);
    const auto rb = report(b);
    CHECK(rb["metrics"]["sweep_source"] == "file");
    for (const std::string k : {"ray0_pdp_peak_delay_ns", "ray1_pdp_peak_delay_ns", "aggregate_peak_delay_ns"})
        CHECK(rb["metrics"][k].get<double>() == Approx(ra["metrics"][k].get<double>()).epsilon(1e-9));

    json missing = reread;
    missing["sounding"]["sweep_file"] = (a / "nope.csv").string();
    const auto c = scratch("sweep-c");
    const auto rc = run_scenario(c, "sound-padp", missing);
    CHECK(rc.status == 3);
    CHECK(json::parse(rc.err)["key"] == "sounding.sweep_file");
}
