#pragma once

// Pure policy evaluation for linear softmax policies over a finite
// output set: pi(y) = exp(<phi(y), theta>) / sum_z exp(<phi(z), theta>).

#include "rewardlab/types.hpp"

namespace rewardlab {

// Softmax with max-logit subtraction. Emits a one-time stderr warning if
// any |logit| exceeds 700 (probabilities at machine-zero scale).
dvec softmax_probs(const feature_set& fs, const policy_params& params);

dvec softmax_from_logits(dvec logits);

// sum_y probs[y] * rewards[y]
double expected_reward(const dvec& probs, const dvec& rewards);

// r(y) - V; probability-weighted advantages sum to zero by construction.
double advantage(const dvec& probs, const dvec& rewards, int output_index);

// Var_{y~pi}[r(y)] via the centered two-term form.
double reward_variance(const dvec& probs, const dvec& rewards);

// Half the l1 distance between two distributions over the same outputs.
double tv_distance(const dvec& p, const dvec& q);

// Finds theta with <phi(y), theta> = ln target_probs[y] for all y via
// least squares; accepts only if the residual satisfies
// ||Phi theta - ln p|| <= 1e-9 * ||ln p||, otherwise throws with the
// residual norm in the message.
policy_params solve_initial_params(const feature_set& fs, const dvec& target_probs);

}  // namespace rewardlab
