#pragma once

// Versioned JSON configuration for experiments. Parsing is strict:
// unknown keys are rejected with their path and the schema_version must
// match exactly.

#include <optional>
#include <string>
#include <variant>

#include "rewardlab/dynamics.hpp"
#include "rewardlab/scenario.hpp"

namespace rewardlab {

inline constexpr int config_schema_version = 1;
inline constexpr const char* version_string = "rewardlab 0.1.0";

enum class estimator_kind { exact, reinforce };

std::string to_string(estimator_kind e);
estimator_kind estimator_kind_from_string(const std::string& s);

// A single run: which objective(s) to ascend and how.
struct simulation_job {
    scenario sc;
    integrator_config integrator;
    reward_choice optimize = reward_choice::proxy;
    bool optimize_both = false;
    estimator_kind estimator = estimator_kind::exact;
    std::optional<double> epsilon;                 // hitting-time threshold level
    std::optional<double> stop_when_v_truth_at_least;
};

struct sweep_spec {
    scenario base;
    integrator_config integrator;
    std::string swept_param = "pi0_star";
    dvec values;
    double epsilon = 0.1;
    int replicates = 1;
    estimator_kind estimator = estimator_kind::exact;
};

struct metrics_job {
    std::string dataset_path;
    std::string values_path;
};

using parsed_config = std::variant<simulation_job, sweep_spec, metrics_job>;

parsed_config parse_config(const std::string& path);
parsed_config parse_config_text(const std::string& text, const std::string& origin);

std::string serialize_config(const parsed_config& config);

scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const scenario& sc);

}  // namespace rewardlab
