#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "artifacts.hpp"
#include "config.hpp"

namespace aperture_forge::cli {

inline constexpr const char* db_convention = "10 log10 for power quantities, 20 log10 for field quantities";

// Flat name -> value map. Values are numbers, booleans, strings or arrays of numbers.
struct Metrics {
    json values = json::object();

    void set(const std::string& name, double v) { values[name] = v; }
    void set(const std::string& name, long long v) { values[name] = v; }
    void set(const std::string& name, int v) { values[name] = v; }
    void set(const std::string& name, Eigen::Index v) { values[name] = static_cast<long long>(v); }
    void set(const std::string& name, bool v) { values[name] = v; }
    void set(const std::string& name, const std::string& v) { values[name] = v; }
    void set(const std::string& name, const char* v) { values[name] = std::string(v); }
    void set(const std::string& name, const std::vector<double>& v) { values[name] = v; }
    void set(const std::string& name, const std::vector<long long>& v) { values[name] = v; }
};

struct RunReport {
    std::string scenario;
    Metrics metrics;
    std::vector<Artifact> artifacts;
    std::vector<std::string> operations;
    double runtime_s = 0.0;  // kept out of report.json so the report is reproducible
};

// Deterministic report document: a fixed (config, seed) pair yields identical bytes.
inline json report_json(const RunConfig& cfg, const RunReport& r) {
    json j;
    j["format"] = "aperture-forge report v1";
    j["db_convention"] = db_convention;
    j["scenario"] = r.scenario;
    j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    j["params"] = cfg.params;
    j["provenance"] = cfg.provenance;
    j["emit"] = {{"images", cfg.emit.images}, {"csv", cfg.emit.csv}};
    j["operations"] = r.operations;
    j["metrics"] = r.metrics.values;
    json arts = json::array();
    for (const auto& a : r.artifacts)
        arts.push_back({{"path", a.path}, {"kind", a.kind}, {"bytes", a.bytes}, {"fnv1a64", hex64(a.checksum)}});
    j["artifacts"] = arts;
    return j;
}

}  // namespace aperture_forge::cli
