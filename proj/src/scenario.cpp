#include "rewardlab/scenario.hpp"

#include <cmath>

namespace rewardlab {

std::string to_string(error_label label) {
    switch (label) {
        case error_label::benign1: return "benign1";
        case error_label::benign2: return "benign2";
        case error_label::beneficial1: return "beneficial1";
        case error_label::harmful1: return "harmful1";
        case error_label::harmful2: return "harmful2";
        case error_label::custom: return "custom";
    }
    throw std::logic_error("unreachable error_label");
}

error_label error_label_from_string(const std::string& s) {
    if (s == "benign1") return error_label::benign1;
    if (s == "benign2") return error_label::benign2;
    if (s == "beneficial1") return error_label::beneficial1;
    if (s == "harmful1") return error_label::harmful1;
    if (s == "harmful2") return error_label::harmful2;
    if (s == "custom") return error_label::custom;
    throw std::invalid_argument("unknown error label: " + s);
}

scenario::disagreement_info scenario::disagreement_set() const {
    disagreement_info info;
    for (size_t i = 0; i < rewards.proxy.size(); ++i) {
        const double gap = std::abs(rewards.proxy[i] - rewards.ground_truth[i]);
        if (gap > 0.0) {
            info.outputs.push_back(static_cast<int>(i));
            info.max_gap = std::max(info.max_gap, gap);
            info.initial_prob += initial_probs[i];
        }
    }
    return info;
}

const structured_reward_spec& scenario::require_structure() const {
    if (!structure)
        throw std::invalid_argument("scenario has no structured reward decomposition (star/med/bad)");
    return *structure;
}

void scenario::validate() const {
    const int n = features.count();
    if (static_cast<int>(rewards.proxy.size()) != n)
        throw std::invalid_argument("reward table size does not match output count");
    if (static_cast<int>(initial_probs.size()) != n)
        throw std::invalid_argument("initial probability count does not match output count");
    check_probability_vector(initial_probs);
    for (double p : initial_probs)
        if (!(p > 0.0)) throw std::invalid_argument("initial probabilities must be strictly positive");
    if (initial_theta && static_cast<int>(initial_theta->size()) != features.dim)
        throw std::invalid_argument("initial theta length does not match feature dim");
    if (structure) structure->validate_against(structured_rewards());
}

}  // namespace rewardlab
