#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aperture_forge::cli {

using json = nlohmann::json;

// Process exit status doubles as the error code.
enum class ErrorCode : int {
    ok = 0,
    usage = 2,
    io = 3,
    syntax = 4,
    unknown_key = 5,
    type_mismatch = 6,
    missing_seed = 7,
    invalid_value = 8,
    unknown_scenario = 9,
    scenario_failed = 10,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ok: return "ok";
        case ErrorCode::usage: return "usage";
        case ErrorCode::io: return "io";
        case ErrorCode::syntax: return "syntax";
        case ErrorCode::unknown_key: return "unknown_key";
        case ErrorCode::type_mismatch: return "type_mismatch";
        case ErrorCode::missing_seed: return "missing_seed";
        case ErrorCode::invalid_value: return "invalid_value";
        case ErrorCode::unknown_scenario: return "unknown_scenario";
        case ErrorCode::scenario_failed: return "scenario_failed";
    }
    return "unknown";
}

struct CliError : std::runtime_error {
    ErrorCode code;
    std::string key;  // offending config key, if any
    std::string scenario;

    CliError(ErrorCode c, const std::string& msg, std::string k = {}, std::string sc = {})
        : std::runtime_error(msg), code(c), key(std::move(k)), scenario(std::move(sc)) {}

    json to_json() const {
        json j = {{"error", error_name(code)}, {"code", static_cast<int>(code)}, {"message", what()}};
        if (!key.empty()) j["key"] = key;
        if (!scenario.empty()) j["scenario"] = scenario;
        return j;
    }
};

enum class ParamKind { number, integer, boolean, string, numbers };

inline const char* kind_name(ParamKind k) {
    switch (k) {
        case ParamKind::number: return "number";
        case ParamKind::integer: return "integer";
        case ParamKind::boolean: return "boolean";
        case ParamKind::string: return "string";
        case ParamKind::numbers: return "array of numbers";
    }
    return "?";
}

inline bool kind_matches(ParamKind k, const json& v) {
    switch (k) {
        case ParamKind::number: return v.is_number();
        case ParamKind::integer: return v.is_number_integer();
        case ParamKind::boolean: return v.is_boolean();
        case ParamKind::string: return v.is_string();
        case ParamKind::numbers:
            if (!v.is_array()) return false;
            for (const auto& e : v)
                if (!e.is_number()) return false;
            return true;
    }
    return false;
}

struct ParamSpec {
    std::string name;
    ParamKind kind;
    json fallback;
};

struct ScenarioSpec {
    std::string name;
    std::string block;  // config object holding the parameters, named after the module
    bool stochastic = false;
    std::vector<ParamSpec> params;
    std::vector<std::string> operations;  // module operations the scenario invokes
};

struct EmitFlags {
    bool images = true;  // PGM renderings
    bool csv = true;     // companion CSVs and traces
};

struct RunConfig {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = "aperture-forge-out";
    EmitFlags emit;
    json params = json::object();                   // resolved parameter block
    std::map<std::string, std::string> provenance;  // key -> default | config | cli

    double num(const std::string& k) const { return params.at(k).get<double>(); }
    long long integer(const std::string& k) const { return params.at(k).get<long long>(); }
    bool flag(const std::string& k) const { return params.at(k).get<bool>(); }
    std::string str(const std::string& k) const { return params.at(k).get<std::string>(); }
    std::vector<double> nums(const std::string& k) const { return params.at(k).get<std::vector<double>>(); }
};

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
};

// Validates `doc` against `spec`: unknown keys and type mismatches are errors, absent parameters take
// their defaults, and the source of every resolved value is recorded.
inline RunConfig resolve_config(const json& doc, const ScenarioSpec& spec, const Overrides& ov = {}) {
    if (!doc.is_object()) throw CliError(ErrorCode::type_mismatch, "config root must be a JSON object", "", spec.name);
    RunConfig cfg;
    cfg.scenario = spec.name;

    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& k = it.key();
        if (k != "scenario" && k != "seed" && k != "out" && k != "emit" && k != spec.block)
            throw CliError(ErrorCode::unknown_key, "unknown key \"" + k + "\"", k, spec.name);
    }

    if (doc.contains("scenario")) {
        const auto& s = doc["scenario"];
        if (!s.is_string()) throw CliError(ErrorCode::type_mismatch, "\"scenario\" must be a string", "scenario", spec.name);
        if (s.get<std::string>() != spec.name)
            throw CliError(ErrorCode::invalid_value, "config names scenario \"" + s.get<std::string>() + "\" but \"" + spec.name + "\" was requested",
                           "scenario", spec.name);
    }

    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) throw CliError(ErrorCode::type_mismatch, "\"seed\" must be a non-negative 64-bit integer", "seed", spec.name);
        cfg.seed = s.get<std::uint64_t>();
        cfg.provenance["seed"] = "config";
    }
    if (ov.seed) {
        cfg.seed = ov.seed;
        cfg.provenance["seed"] = "cli";
    }
    if (spec.stochastic && !cfg.seed)
        throw CliError(ErrorCode::missing_seed, "scenario \"" + spec.name + "\" is stochastic and needs a seed (config \"seed\" or --seed)", "seed",
                       spec.name);

    cfg.provenance["out"] = "default";
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) throw CliError(ErrorCode::type_mismatch, "\"out\" must be a string", "out", spec.name);
        cfg.out_dir = doc["out"].get<std::string>();
        cfg.provenance["out"] = "config";
    }
    if (ov.out_dir) {
        cfg.out_dir = *ov.out_dir;
        cfg.provenance["out"] = "cli";
    }

    if (doc.contains("emit")) {
        const auto& e = doc["emit"];
        if (!e.is_object()) throw CliError(ErrorCode::type_mismatch, "\"emit\" must be an object", "emit", spec.name);
        for (auto it = e.begin(); it != e.end(); ++it) {
            const std::string key = "emit." + it.key();
            if (it.key() != "images" && it.key() != "csv") throw CliError(ErrorCode::unknown_key, "unknown key \"" + key + "\"", key, spec.name);
            if (!it.value().is_boolean()) throw CliError(ErrorCode::type_mismatch, "\"" + key + "\" must be a boolean", key, spec.name);
            (it.key() == "images" ? cfg.emit.images : cfg.emit.csv) = it.value().get<bool>();
        }
    }

    json block = json::object();
    if (doc.contains(spec.block)) {
        block = doc[spec.block];
        if (!block.is_object()) throw CliError(ErrorCode::type_mismatch, "\"" + spec.block + "\" must be an object", spec.block, spec.name);
    }
    for (auto it = block.begin(); it != block.end(); ++it) {
        bool known = false;
        for (const auto& p : spec.params) known = known || p.name == it.key();
        const std::string key = spec.block + "." + it.key();
        if (!known) throw CliError(ErrorCode::unknown_key, "unknown key \"" + key + "\"", key, spec.name);
    }
    for (const auto& p : spec.params) {
        const std::string key = spec.block + "." + p.name;
        if (block.contains(p.name)) {
            const auto& v = block[p.name];
            if (!kind_matches(p.kind, v))
                throw CliError(ErrorCode::type_mismatch, "\"" + key + "\" must be a " + std::string(kind_name(p.kind)), key, spec.name);
            cfg.params[p.name] = v;
            cfg.provenance[key] = "config";
        } else {
            cfg.params[p.name] = p.fallback;
            cfg.provenance[key] = "default";
        }
    }
    return cfg;
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CliError(ErrorCode::io, "cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw CliError(ErrorCode::syntax, std::string("config is not valid JSON: ") + e.what());
    }
}

inline RunConfig parse_config(const std::filesystem::path& path, const ScenarioSpec& spec, const Overrides& ov = {}) {
    return resolve_config(read_json_file(path), spec, ov);
}

}  // namespace aperture_forge::cli
