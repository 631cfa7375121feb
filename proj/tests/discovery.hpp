#pragma once

// Builds assumption-satisfying configurations by querying the checker for
// the cap on pi0(star) and the feasible bad-mass window, instead of
// guessing numbers.

#include <cmath>

#include "rewardlab/scenarios.hpp"

namespace rewardlab::testing {

inline void apply_checker_window(scenario& sc, bound_kind kind, double cap_fraction) {
    assumption_report probe = check_assumptions(sc, kind);
    const double pi_star = cap_fraction * probe.constant("cap_pi0_star");
    const int star = sc.require_structure().star_index;
    const int med = sc.require_structure().med_index;
    const auto& bads = sc.require_structure().bad_indices;

    // provisional probabilities so the window constants refer to the final pi0(star)
    double bad_mass = 0.06;
    for (int pass = 0; pass < 2; ++pass) {
        sc.initial_probs.assign(sc.initial_probs.size(), bad_mass / static_cast<double>(bads.size()));
        sc.initial_probs[static_cast<size_t>(star)] = pi_star;
        sc.initial_probs[static_cast<size_t>(med)] = 1.0 - pi_star - bad_mass;
        probe = check_assumptions(sc, kind);
        bad_mass = 0.5 * (probe.constant("ybad_lo") + probe.constant("ybad_hi"));
    }
}

inline scenario discover_orthonormal_config(double cap_fraction, bool demote_proxy) {
    scenario sc = build_fig2_scenario(0.05, demote_proxy);
    apply_checker_window(sc, bound_kind::orthonormal_stall, cap_fraction);
    return sc;
}

inline scenario discover_negative_config(double cap_fraction) {
    scenario sc = build_geometry_scenario(geometry_kind::negative);
    sc.rewards.proxy[1] = -1.0;  // demote the mediocre output in the proxy
    sc.label = error_label::beneficial1;
    apply_checker_window(sc, bound_kind::negative_similarity_stall, cap_fraction);
    return sc;
}

// Positive-similarity configuration in the regime
// ||phi(med)||^2 < s < ||phi(star)||^2 < 100 ||phi(med)||^2, with a small
// bad-reward gap so the demoted-run suppression threshold stays
// attainable.
inline scenario discover_positive_config(double cap_fraction, double s = 1.06) {
    scenario sc;
    const double star_norm = 1.5;
    const double along = s / star_norm;
    sc.features = make_feature_set(5, {{star_norm, 0.0, 0.0, 0.0, 0.0},
                                       {along, std::sqrt(1.0 - along * along), 0.0, 0.0, 0.0},
                                       {0.0, 0.0, 1.0, 0.0, 0.0},
                                       {0.0, 0.0, 0.0, 1.0, 0.0},
                                       {0.0, 0.0, 0.0, 0.0, 1.0}});
    dvec truth = {1.0, 0.8, -0.2, -0.2, -0.2};
    dvec proxy = truth;
    proxy[1] = -1.0;
    sc.rewards = make_reward_table(std::move(proxy), std::move(truth));
    sc.structure = structured_reward_spec::from_rewards(sc.rewards.ground_truth);
    sc.initial_probs = {0.05, 0.5, 0.15, 0.15, 0.15};
    sc.seed = 20250904;
    sc.label = error_label::beneficial1;
    apply_checker_window(sc, bound_kind::positive_similarity, cap_fraction);
    return sc;
}

}  // namespace rewardlab::testing
