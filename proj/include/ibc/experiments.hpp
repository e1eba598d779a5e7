#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ibc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key = value configuration ('#' comments). Unknown keys are
/// rejected with their line number. All randomness derives from `seed`.
struct ExperimentConfig {
    std::string experiment;
    std::vector<double> eps{1e-1, 1e-2};
    double t = 2.0;
    int m = 8;
    int n = 16;
    int d = 2;
    double alpha = 2.0;
    std::vector<double> gamma{1.0, 0.25};
    double M = 20.0;
    long N = 0;  // 0 = chosen by the experiment
    std::uint64_t seed = 42;
    std::filesystem::path out;  // empty = out/<experiment>; IBC_OUT overrides
};

ExperimentConfig parse_config(const std::string& text);

struct ExperimentInfo {
    std::string name;
    std::string description;
};

const std::vector<ExperimentInfo>& experiment_catalog();

struct ExperimentOutcome {
    bool all_pass = false;
    std::filesystem::path out_dir;
    nlohmann::json summary;
};

/// Writes <out>/results.csv and <out>/summary.json; the summary names the
/// acceptance criterion each claim instantiates.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace ibc
