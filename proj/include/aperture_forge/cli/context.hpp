#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "config.hpp"
#include "report.hpp"

namespace aperture_forge::cli {

struct ScenarioContext {
    const RunConfig& cfg;
    Metrics& metrics;
    ArtifactWriter& out;

    std::uint64_t seed() const { return cfg.seed.value_or(0); }

    [[noreturn]] void invalid(const std::string& key, const std::string& msg) const {
        throw CliError(ErrorCode::invalid_value, msg, key, cfg.scenario);
    }

    double positive(const std::string& key) const {
        const double v = cfg.num(key);
        if (!(v > 0.0)) invalid(key, "\"" + key + "\" must be positive");
        return v;
    }

    Eigen::Index count(const std::string& key, long long lo, long long hi) const {
        const long long v = cfg.integer(key);
        if (v < lo || v > hi)
            invalid(key, "\"" + key + "\" must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<Eigen::Index>(v);
    }
};

using Runner = void (*)(ScenarioContext&);

struct Scenario {
    ScenarioSpec spec;
    Runner run;
};

inline ParamSpec num_param(std::string name, double v) { return {std::move(name), ParamKind::number, v}; }
inline ParamSpec int_param(std::string name, long long v) { return {std::move(name), ParamKind::integer, v}; }
inline ParamSpec bool_param(std::string name, bool v) { return {std::move(name), ParamKind::boolean, v}; }
inline ParamSpec str_param(std::string name, std::string v) { return {std::move(name), ParamKind::string, std::move(v)}; }
inline ParamSpec nums_param(std::string name, std::vector<double> v) { return {std::move(name), ParamKind::numbers, std::move(v)}; }

inline Eigen::VectorXd as_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> as_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace aperture_forge::cli
