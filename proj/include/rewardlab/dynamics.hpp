#pragma once

// Exact policy-gradient computation, gradient-flow integration, the
// single-sample score-function estimator, and hitting-time measurement.

#include <cstdint>
#include <optional>

#include "rewardlab/scenario.hpp"
#include "rewardlab/types.hpp"

namespace rewardlab {

enum class reward_choice { proxy, ground_truth };
enum class integration_method { euler, rk4 };

std::string to_string(integration_method m);
integration_method integration_method_from_string(const std::string& s);

struct integrator_config {
    integration_method method = integration_method::euler;
    double step_size = 0.1;
    long long max_steps = 10'000'000;
    long long record_every = 100;

    void validate() const;
    std::string describe() const;  // e.g. "euler eta=0.1"
};

struct trajectory {
    std::vector<long long> steps;
    dvec times;  // step * step_size
    std::vector<dvec> probs;
    dvec v_proxy;
    dvec v_truth;
    dvec reward_variance_proxy;
    std::vector<dvec> params_snapshots;  // filled only when requested

    long long total_steps = 0;
    bool stopped_early = false;
    // Steps where the optimized objective decreased by more than
    // 1e-9 * step_size (discretization contract violations).
    long long v_decrease_warnings = 0;

    size_t size() const { return times.size(); }
};

struct hitting_time_result {
    double epsilon = 0.0;
    double threshold = 0.0;
    std::optional<double> t_hit;  // empty: not reached within horizon

    bool reached() const { return t_hit.has_value(); }
};

struct flow_options {
    std::optional<double> stop_when_v_truth_at_least;
    bool record_params = false;
};

// nabla V(theta) = sum_y pi(y) A(y) phi(y)
dvec exact_gradient(const feature_set& fs, const policy_params& params, const dvec& rewards);

// d/dt <phi(y), theta> via the per-output decomposition
// pi(y) A(y) ||phi(y)||^2 + sum_{z != y} pi(z) A(z) <phi(z), phi(y)>.
double logit_derivative(const feature_set& fs, const policy_params& params, const dvec& rewards, int output_index);

// d/dt pi(y) = pi(y) <phi(y) - sum_z pi(z) phi(z), nabla V>
double probability_derivative(const feature_set& fs, const policy_params& params, const dvec& rewards,
                              int output_index);

// r(y) * grad log pi(y) = r(y) * (phi(y) - sum_z pi(z) phi(z)), the
// single-sample unbiased estimate of nabla V.
dvec score_function_update(const feature_set& fs, const dvec& probs, const dvec& rewards, int sampled_output);

trajectory run_flow(const scenario& sc, reward_choice choice, const integrator_config& cfg,
                    const flow_options& opts = {});

// theta <- theta + eta * r(y) * grad log pi(y) with y sampled from the
// current policy; one sample per step, no baseline. The proxy reward is
// ascended unless choice says otherwise.
trajectory run_reinforce(const scenario& sc, const integrator_config& cfg, std::uint64_t seed,
                         const flow_options& opts = {}, reward_choice choice = reward_choice::proxy);

// First time V_G >= r_G(star) - epsilon, linearly interpolated between
// the bracketing recorded samples. Requires 0 < epsilon < delta1.
hitting_time_result hitting_time(const trajectory& traj, double epsilon, const scenario& sc);

struct tv_pair_result {
    dvec times;
    dvec tv;
    double max_tv = 0.0;
};

// TV(pi_t[proxy-run], pi_t[truth-run]) over [0, horizon], both runs
// started from the same theta0.
tv_pair_result tv_divergence_pair(const scenario& sc, const integrator_config& cfg, double horizon);

}  // namespace rewardlab
