// aperture-forge <scenario> --config <path> [--seed N] [--out DIR]
#include <CLI11.hpp>

#include <aperture_forge/cli.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace af = aperture_forge::cli;

namespace {

int fail(const af::CliError& e) {
    std::cerr << e.to_json().dump() << "\n";
    return static_cast<int>(e.code);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wideband synthetic-aperture scenarios: simulate, process, measure."};
    std::string scenario, config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string names;
    for (const auto& s : af::scenarios()) names += "\n  " + s.spec.name;
    app.add_option("scenario", scenario, "Scenario to run:" + names)->required();
    app.add_option("--config", config, "JSON configuration file")->required();
    app.add_option("--seed", seed, "64-bit seed (overrides the config)");
    app.add_option("--out", out, "Output directory (overrides the config)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(af::CliError(af::ErrorCode::usage, e.what()));
    }

    try {
        const auto& sc = af::find_scenario(scenario);
        af::Overrides ov;
        ov.seed = seed;
        if (out) ov.out_dir = *out;
        const af::RunConfig cfg = af::parse_config(config, sc.spec, ov);
        const af::RunReport r = af::run(cfg);
        const std::string report = af::report_json(cfg, r).dump(2) + "\n";
        std::cout << af::json({{"scenario", r.scenario},
                               {"out", cfg.out_dir.string()},
                               {"report", (cfg.out_dir / "report.json").string()},
                               {"report_fnv1a64", af::hex64(af::fnv1a64(report))},
                               {"artifacts", r.artifacts.size()},
                               {"runtime_s", r.runtime_s}})
                         .dump()
                  << "\n";
    } catch (const af::CliError& e) {
        return fail(e);
    } catch (const std::exception& e) {
        return fail(af::CliError(af::ErrorCode::scenario_failed, e.what(), "", scenario));
    }
    return 0;
}
