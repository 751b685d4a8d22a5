#pragma once

#include <chrono>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "config.hpp"
#include "context.hpp"
#include "report.hpp"
#include "scenarios_inversion.hpp"
#include "scenarios_radiometry.hpp"
#include "scenarios_sar.hpp"
#include "scenarios_sas.hpp"
#include "scenarios_sounding.hpp"
#include "scenarios_waveforms.hpp"

namespace aperture_forge::cli {

inline const std::vector<Scenario>& scenarios() {
    static const std::vector<Scenario> all{
        sar_point_scenario(),         sar_tomo_scenario(),           sar_capon_scenario(),       sar_speckle_scenario(),
        sound_constants_scenario(),   sound_padp_scenario(),         sound_squint_scenario(),    sound_sparse_lattice_scenario(),
        sas_recon_scenario(),         pr_recover_scenario(),         fp_demo_scenario(),         radiometry_roundtrip_scenario(),
        waveform_ambiguity_scenario(), qsar_budget_scenario(),
    };
    return all;
}

inline const Scenario& find_scenario(const std::string& name) {
    for (const auto& s : scenarios())
        if (s.spec.name == name) return s;
    std::string known;
    for (const auto& s : scenarios()) known += (known.empty() ? "" : ", ") + s.spec.name;
    throw CliError(ErrorCode::unknown_scenario, "unknown scenario \"" + name + "\" (known: " + known + ")", "", name);
}

// Operations reported for every run in addition to the scenario's own.
inline std::vector<std::string> cli_operations() { return {"cli.parse_config", "cli.run", "cli.render_image"}; }

// Executes the scenario and writes its artifacts, report.json (deterministic) and timing.json
// (wall-clock, not part of the manifest). Module failures become scenario_failed errors.
inline RunReport run(const RunConfig& cfg) {
    const Scenario& sc = find_scenario(cfg.scenario);
    RunReport r;
    r.scenario = cfg.scenario;
    r.operations = sc.spec.operations;
    for (const auto& op : cli_operations()) r.operations.push_back(op);
    ArtifactWriter out(cfg.out_dir, cfg.emit.images, cfg.emit.csv);
    ScenarioContext ctx{cfg, r.metrics, out};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::filesystem::create_directories(cfg.out_dir);
        sc.run(ctx);
    } catch (const CliError&) {
        throw;
    } catch (const std::filesystem::filesystem_error& e) {
        throw CliError(ErrorCode::io, e.what(), "", cfg.scenario);
    } catch (const std::exception& e) {
        throw CliError(ErrorCode::scenario_failed, std::string(cfg.scenario) + ": " + e.what(), "", cfg.scenario);
    }
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.artifacts = out.manifest();
    try {
        write_file(cfg.out_dir / "report.json", report_json(cfg, r).dump(2) + "\n");
        write_file(cfg.out_dir / "timing.json", json({{"scenario", cfg.scenario}, {"runtime_s", r.runtime_s}}).dump(2) + "\n");
    } catch (const std::exception& e) {
        throw CliError(ErrorCode::io, e.what(), "", cfg.scenario);
    }
    return r;
}

}  // namespace aperture_forge::cli
