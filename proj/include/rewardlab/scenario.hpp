#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rewardlab/types.hpp"

namespace rewardlab {

// Reward-error categories. "custom" marks scenarios that do not claim a
// category-defining inequality.
enum class error_label { benign1, benign2, beneficial1, harmful1, harmful2, custom };

std::string to_string(error_label label);
error_label error_label_from_string(const std::string& s);

// A complete, self-contained experiment description. The structured
// decomposition refers to the ground-truth rewards unless
// structure_on_proxy is set (the role-swapped harmful variant). It is
// absent for degenerate scenarios (constant rewards, two outputs);
// checkers, bound calculators and sweeps require it.
struct scenario {
    feature_set features;
    reward_table rewards;
    std::optional<structured_reward_spec> structure;
    bool structure_on_proxy = false;
    dvec initial_probs;
    // Set when the experiment prescribes theta0 directly instead of
    // initial probabilities (initial_probs then caches softmax(theta0)).
    std::optional<dvec> initial_theta;
    std::uint64_t seed = 0;
    error_label label = error_label::custom;

    const dvec& structured_rewards() const { return structure_on_proxy ? rewards.proxy : rewards.ground_truth; }

    // Outputs where proxy and ground truth disagree, with the largest
    // disagreement magnitude and their total initial probability.
    struct disagreement_info {
        std::vector<int> outputs;
        double max_gap = 0.0;
        double initial_prob = 0.0;
    };
    disagreement_info disagreement_set() const;

    // Throws when the structured decomposition is required but absent.
    const structured_reward_spec& require_structure() const;

    void validate() const;
};

}  // namespace rewardlab
